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
#include <vector>

#include "polrec/graph.hpp"

namespace polrec {

struct WalkParams {
  double alpha = 1.0;  // exponent on edge transition probabilities, >= 0
  double beta = 0.6;   // item popularity penalty exponent, in [0, 1]
};

struct ScoredItem {
  std::uint32_t item;  // internal item index
  double score;        // non-negative, finite
};

/// Three-step user->item->user->item walk score for every item: with edge
/// weights (1/d_u)^alpha and (1/d_i)^alpha, s_i sums the weight products
/// over all three-step paths from the user. Computed by sparse two-hop
/// expansion; no renormalization after exponentiation (ranking-equivalent).
/// Items unreachable in three steps score exactly 0.
std::vector<double> p3_scores(const InteractionGraph& graph,
                              std::uint32_t user, double alpha);

/// p3_scores divided elementwise by d_i^beta, penalizing popular items.
std::vector<double> rp3b_scores(const InteractionGraph& graph,
                                std::uint32_t user, const WalkParams& params);

/// Top-n items by rp3b score, seen items removed when exclude_seen, ties
/// broken by ascending item index. Zero-score items are never returned, so
/// fewer than n may come back.
std::vector<ScoredItem> recommend_topn(const InteractionGraph& graph,
                                       std::uint32_t user,
                                       const WalkParams& params, std::size_t n,
                                       bool exclude_seen);

}  // namespace polrec
