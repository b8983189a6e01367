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

#include "polrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "polrec/errors.hpp"
#include "polrec/rng.hpp"

#include <json.hpp>

namespace polrec {

HoldoutSplit holdout_split(const std::vector<InteractionEvent>& events,
                           const SplitSpec& spec) {
  if (spec.k < 1) {
    throw Error(errc::invalid_params, "holdout_split: k must be >= 1");
  }
  if (events.empty()) {
    throw Error(errc::empty_event_set, "holdout_split: no events");
  }

  // Deduplicated pairs in first-appearance order, grouped per user.
  std::vector<std::string> users;  // first-appearance order
  std::unordered_map<std::string, std::size_t> user_slot;
  std::vector<std::vector<std::string>> items_per_user;
  std::vector<InteractionEvent> dedup_events;
  std::unordered_map<std::string, std::unordered_map<std::string, char>> seen;
  for (const auto& event : events) {
    auto& items_seen = seen[event.user];
    if (!items_seen.try_emplace(event.item, 1).second) continue;
    dedup_events.push_back(event);
    auto [it, inserted] = user_slot.try_emplace(event.user, users.size());
    if (inserted) {
      users.push_back(event.user);
      items_per_user.emplace_back();
    }
    items_per_user[it->second].push_back(event.item);
  }

  SplitMix64 rng(spec.seed);
  std::unordered_map<std::string, std::unordered_map<std::string, char>> held;
  HoldoutSplit split;
  for (std::size_t slot = 0; slot < users.size(); ++slot) {
    auto& items = items_per_user[slot];
    if (items.size() < spec.k + 1) continue;  // stays fully in train
    // Partial Fisher-Yates: the first k entries are a uniform sample
    // without replacement.
    for (std::size_t j = 0; j < spec.k; ++j) {
      const std::size_t swap_with =
          j + static_cast<std::size_t>(rng.next_below(items.size() - j));
      std::swap(items[j], items[swap_with]);
    }
    auto& held_items = held[users[slot]];
    for (std::size_t j = 0; j < spec.k; ++j) {
      held_items.emplace(items[j], 1);
      split.test_pairs.emplace_back(users[slot], items[j]);
    }
  }
  if (split.test_pairs.empty()) {
    throw Error(errc::no_evaluable_users,
                "holdout_split: no user has more than k distinct items");
  }

  for (auto& event : dedup_events) {
    auto user_it = held.find(event.user);
    if (user_it != held.end() && user_it->second.count(event.item) > 0) {
      continue;
    }
    split.train_events.push_back(std::move(event));
  }
  return split;
}

double precision_at_n(std::span<const std::uint32_t> recs,
                      const std::unordered_set<std::uint32_t>& holdout,
                      std::size_t n) {
  if (n < 1) throw Error(errc::invalid_params, "precision_at_n: n must be >= 1");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < recs.size() && r < n; ++r) {
    hits += holdout.count(recs[r]);
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

double recall_at_n(std::span<const std::uint32_t> recs,
                   const std::unordered_set<std::uint32_t>& holdout,
                   std::size_t n) {
  if (n < 1) throw Error(errc::invalid_params, "recall_at_n: n must be >= 1");
  if (holdout.empty()) {
    throw Error(errc::empty_holdout, "recall_at_n: empty holdout");
  }
  std::size_t hits = 0;
  for (std::size_t r = 0; r < recs.size() && r < n; ++r) {
    hits += holdout.count(recs[r]);
  }
  return static_cast<double>(hits) / static_cast<double>(holdout.size());
}

double ndcg_at_n(std::span<const std::uint32_t> recs,
                 const std::unordered_set<std::uint32_t>& holdout,
                 std::size_t n) {
  if (n < 1) throw Error(errc::invalid_params, "ndcg_at_n: n must be >= 1");
  if (holdout.empty()) {
    throw Error(errc::empty_holdout, "ndcg_at_n: empty holdout");
  }
  double dcg = 0.0;
  for (std::size_t r = 0; r < recs.size() && r < n; ++r) {
    if (holdout.count(recs[r]) > 0) {
      dcg += 1.0 / std::log2(static_cast<double>(r + 2));
    }
  }
  double idcg = 0.0;
  const std::size_t ideal = std::min(holdout.size(), n);
  for (std::size_t r = 0; r < ideal; ++r) {
    idcg += 1.0 / std::log2(static_cast<double>(r + 2));
  }
  return dcg / idcg;
}

double list_spread(std::span<const double> positions) {
  if (positions.empty()) {
    throw Error(errc::empty_list, "list_spread: no positions");
  }
  double mean = 0.0;
  for (double p : positions) mean += p;
  mean /= static_cast<double>(positions.size());
  double var = 0.0;
  for (double p : positions) var += (p - mean) * (p - mean);
  var /= static_cast<double>(positions.size());
  return std::sqrt(var);
}

double intra_list_distance(std::span<const double> positions) {
  if (positions.size() < 2) {
    throw Error(errc::too_few_items,
                "intra_list_distance: need at least two positions");
  }
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      acc += std::abs(positions[a] - positions[b]);
      ++pairs;
    }
  }
  return acc / static_cast<double>(pairs);
}

double displacement(double theta_u, std::span<const double> positions) {
  if (positions.empty()) {
    throw Error(errc::empty_list, "displacement: empty list");
  }
  double mean = 0.0;
  for (double p : positions) mean += p;
  mean /= static_cast<double>(positions.size());
  return mean - theta_u;
}

double catalog_coverage(
    const std::vector<std::vector<std::uint32_t>>& rec_lists,
    std::size_t catalog_size) {
  if (catalog_size < 1) {
    throw Error(errc::invalid_params, "catalog_coverage: empty catalog");
  }
  std::unordered_set<std::uint32_t> distinct;
  for (const auto& list : rec_lists) distinct.insert(list.begin(), list.end());
  return static_cast<double>(distinct.size()) /
         static_cast<double>(catalog_size);
}

double gini_index(std::vector<std::uint64_t> counts) {
  if (counts.empty()) {
    throw Error(errc::invalid_params, "gini_index: empty count vector");
  }
  std::sort(counts.begin(), counts.end());
  const double m = static_cast<double>(counts.size());
  double total = 0.0, weighted = 0.0;
  for (std::size_t idx = 0; idx < counts.size(); ++idx) {
    const double x = static_cast<double>(counts[idx]);
    total += x;
    weighted += (2.0 * static_cast<double>(idx + 1) - m - 1.0) * x;
  }
  if (total == 0.0) return 0.0;
  return weighted / (m * total);
}

MetricsReport evaluate(
    const InteractionGraph& train, const IdeologyModel& model,
    const std::vector<std::pair<std::string, std::string>>& test_pairs,
    const WalkParams& walk, const DiversifyParams& div, bool use_diversifier,
    std::size_t n) {
  if (test_pairs.empty()) {
    throw Error(errc::no_evaluable_users, "evaluate: no test pairs");
  }
  if (n < 1) throw Error(errc::invalid_params, "evaluate: n must be >= 1");

  AlignedPositions pos = align_positions(model, train);

  // Holdout sets keyed by train user index. Held-out items missing from the
  // train catalog can never be hit but still widen the per-user holdout, so
  // they get synthetic ids past the catalog.
  std::map<std::uint32_t, std::unordered_set<std::uint32_t>> holdout_by_user;
  std::uint32_t next_synthetic = static_cast<std::uint32_t>(train.num_items());
  for (const auto& [user_id, item_id] : test_pairs) {
    const auto u = train.user_index(user_id);
    if (!u) {
      throw Error(errc::unknown_user,
                  "evaluate: test user missing from train graph: " + user_id);
    }
    const auto i = train.item_index(item_id);
    holdout_by_user[*u].insert(i ? *i : next_synthetic++);
  }

  DiversifyParams div_used = div;
  div_used.list_size = n;  // metrics and lists share one cutoff

  MetricsReport report;
  report.n_items_unpositioned = pos.items_unpositioned;

  double sum_precision = 0.0, sum_recall = 0.0, sum_ndcg = 0.0;
  double sum_spread = 0.0, sum_ild = 0.0, sum_disp = 0.0;
  std::size_t n_spread = 0, n_ild = 0, n_disp = 0;

  std::vector<std::vector<std::uint32_t>> all_lists;
  std::vector<std::uint64_t> rec_counts(train.num_items(), 0);

  for (const auto& [u, holdout] : holdout_by_user) {
    if (!std::isfinite(pos.theta[u])) {
      throw Error(errc::unknown_user,
                  "evaluate: no model position for user " + train.user_id(u));
    }
    std::vector<std::uint32_t> recs;
    if (use_diversifier) {
      for (const Recommendation& r :
           diversify_recommend(train, pos, u, walk, div_used)) {
        recs.push_back(r.item);
      }
    } else {
      for (const ScoredItem& s : recommend_topn(train, u, walk, n, true)) {
        recs.push_back(s.item);
      }
    }

    ++report.n_users_evaluated;
    if (recs.empty()) {
      ++report.n_users_empty_list;  // contributes 0 to the accuracy sums
      continue;
    }

    sum_precision += precision_at_n(recs, holdout, n);
    sum_recall += recall_at_n(recs, holdout, n);
    sum_ndcg += ndcg_at_n(recs, holdout, n);

    std::vector<double> list_phi;
    for (std::uint32_t item : recs) {
      if (std::isfinite(pos.phi[item])) list_phi.push_back(pos.phi[item]);
      ++rec_counts[item];
    }
    all_lists.push_back(std::move(recs));

    if (!list_phi.empty()) {
      sum_spread += list_spread(list_phi);
      ++n_spread;
      sum_disp += std::abs(displacement(pos.theta[u], list_phi));
      ++n_disp;
    }
    if (list_phi.size() >= 2) {
      sum_ild += intra_list_distance(list_phi);
      ++n_ild;
    }
  }

  const double n_users = static_cast<double>(report.n_users_evaluated);
  report.precision = sum_precision / n_users;
  report.recall = sum_recall / n_users;
  report.ndcg = sum_ndcg / n_users;
  report.list_spread = n_spread ? sum_spread / n_spread : 0.0;
  report.ild = n_ild ? sum_ild / n_ild : 0.0;
  report.displacement_abs = n_disp ? sum_disp / n_disp : 0.0;
  report.coverage = catalog_coverage(all_lists, train.num_items());
  report.gini = gini_index(rec_counts);
  return report;
}

void write_report(std::ostream& out, const MetricsReport& report) {
  out << report_to_string(report) << '\n';
}

std::string report_to_string(const MetricsReport& report) {
  nlohmann::json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["ndcg"] = report.ndcg;
  j["list_spread"] = report.list_spread;
  j["ild"] = report.ild;
  j["displacement_abs"] = report.displacement_abs;
  j["coverage"] = report.coverage;
  j["gini"] = report.gini;
  j["n_users_evaluated"] = report.n_users_evaluated;
  j["n_users_empty_list"] = report.n_users_empty_list;
  j["n_items_unpositioned"] = report.n_items_unpositioned;
  return j.dump(2);
}

}  // namespace polrec
