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
#include <span>
#include <utility>
#include <vector>

#include "polrec/graph.hpp"
#include "polrec/ideology.hpp"
#include "polrec/walk.hpp"

namespace polrec {

struct DiversifyParams {
  double lambda = 0.5;         // relevance-diversity tradeoff, in [0, 1]
  double tau = 2.0;            // acceptability window half-width, > 0
  std::size_t pool_size = 100; // candidate pool taken from the walk
  std::size_t list_size = 10;  // output length, 1 <= list_size <= pool_size
};

/// A pool entry: walk score plus the item's ideological position.
struct Candidate {
  std::uint32_t item;
  double score;
  double phi;
};

struct Recommendation {
  std::uint32_t item;
  double score;
  double phi;
  bool backfilled;  // taken from outside the acceptability window
};

/// Splits candidates into those within the closed window
/// |phi - theta_u| <= tau and the rest, both preserving input order.
/// Candidates with a NaN position fail the comparison and are rejected.
std::pair<std::vector<Candidate>, std::vector<Candidate>>
acceptability_filter(std::span<const Candidate> candidates, double theta_u,
                     double tau);

/// Marginal-gain greedy selection: scores are min-max normalized over the
/// pool (an all-equal pool normalizes to 1); the first pick maximizes the
/// normalized score, each later pick maximizes
///   g(i) = lambda * s~_i + (1 - lambda) * min_{j selected} |phi_i - phi_j|,
/// every tie broken by the lowest item index. Stops after list_size picks
/// or pool exhaustion. Throws Error(errc::empty_pool) on an empty pool.
std::vector<Candidate> greedy_rerank(std::span<const Candidate> pool,
                                     const DiversifyParams& params);

/// Full pipeline for one user: top-pool_size unseen items by rp3b score,
/// acceptability-filtered around theta_u, greedily re-ranked to list_size;
/// when too few candidates are acceptable the list is backfilled from the
/// rejected ones in descending score order, flagged as such. An empty pool
/// yields an empty list.
std::vector<Recommendation> diversify_recommend(const InteractionGraph& graph,
                                                const AlignedPositions& pos,
                                                std::uint32_t user,
                                                const WalkParams& walk,
                                                const DiversifyParams& params);

/// Convenience overload that aligns the model against the graph first.
std::vector<Recommendation> diversify_recommend(const InteractionGraph& graph,
                                                const IdeologyModel& model,
                                                std::uint32_t user,
                                                const WalkParams& walk,
                                                const DiversifyParams& params);

}  // namespace polrec
