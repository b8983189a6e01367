// Copyright 2026 The Polrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "polrec/diversify.hpp"
#include "polrec/events.hpp"
#include "polrec/graph.hpp"
#include "polrec/ideology.hpp"
#include "polrec/walk.hpp"

namespace polrec {

struct SplitSpec {
  std::size_t k = 1;        // holdout interactions per user, >= 1
  std::uint64_t seed = 0;
};

struct HoldoutSplit {
  std::vector<InteractionEvent> train_events;
  // held-out (user, item) pairs by external identifier
  std::vector<std::pair<std::string, std::string>> test_pairs;
};

/// Per user with at least k+1 distinct items, exactly k are sampled
/// uniformly without replacement into the test side (one seeded generator,
/// users visited in ascending first-appearance order). Users with too few
/// items stay fully in train and are not evaluated. Duplicate (user, item)
/// pairs are collapsed first; train and test partition the deduplicated
/// pair set. Throws Error(errc::no_evaluable_users) when no user qualifies.
HoldoutSplit holdout_split(const std::vector<InteractionEvent>& events,
                           const SplitSpec& spec);

/// hits in the first n / n. Recommendation lists shorter than n contribute
/// only their actual entries to the hit count.
double precision_at_n(std::span<const std::uint32_t> recs,
                      const std::unordered_set<std::uint32_t>& holdout,
                      std::size_t n);

/// hits in the first n / |holdout|. Throws on an empty holdout.
double recall_at_n(std::span<const std::uint32_t> recs,
                   const std::unordered_set<std::uint32_t>& holdout,
                   std::size_t n);

/// Binary-relevance NDCG: DCG sums 1/log2(rank+1) over hits (rank from 1),
/// the ideal DCG places min(|holdout|, n) hits first.
double ndcg_at_n(std::span<const std::uint32_t> recs,
                 const std::unordered_set<std::uint32_t>& holdout,
                 std::size_t n);

/// Population standard deviation of list positions; a singleton spreads 0.
double list_spread(std::span<const double> positions);

/// Mean absolute pairwise position difference over unordered pairs.
/// Throws Error(errc::too_few_items) on fewer than two positions.
double intra_list_distance(std::span<const double> positions);

/// mean(list positions) - theta_u, signed. Throws on an empty list.
double displacement(double theta_u, std::span<const double> positions);

/// Distinct recommended items / catalog size.
double catalog_coverage(
    const std::vector<std::vector<std::uint32_t>>& rec_lists,
    std::size_t catalog_size);

/// Gini concentration of recommendation counts: with counts sorted
/// ascending, G = sum_i (2i - m - 1) x_i / (m sum x), defined 0 when no
/// item was ever recommended.
double gini_index(std::vector<std::uint64_t> counts);

/// Field names are the serialization contract for the report object.
struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double ndcg = 0.0;
  double list_spread = 0.0;       // mean population std of list positions
  double ild = 0.0;               // mean pairwise |phi difference| in lists
  double displacement_abs = 0.0;  // mean |mean(list phi) - theta_u|
  double coverage = 0.0;
  double gini = 0.0;
  std::size_t n_users_evaluated = 0;
  std::size_t n_users_empty_list = 0;    // contributed 0 to accuracy means
  std::size_t n_items_unpositioned = 0;  // excluded from diversity metrics
};

/// Generates one list per test user on the train graph (plain top-n or the
/// diversified pipeline; list length n either way), scores it against the
/// held-out items and aggregates by unweighted per-user mean. Users whose
/// list comes back empty contribute 0 to the accuracy means and are left
/// out of the spread/ILD/displacement means. Item positions come from the
/// model, falling back to a train-sharer fold-in.
MetricsReport evaluate(
    const InteractionGraph& train, const IdeologyModel& model,
    const std::vector<std::pair<std::string, std::string>>& test_pairs,
    const WalkParams& walk, const DiversifyParams& div, bool use_diversifier,
    std::size_t n);

/// One JSON object per report, keys exactly the MetricsReport field names.
void write_report(std::ostream& out, const MetricsReport& report);
std::string report_to_string(const MetricsReport& report);

}  // namespace polrec
