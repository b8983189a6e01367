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

#include "polrec/walk.hpp"

#include <algorithm>
#include <cmath>

#include "polrec/errors.hpp"

namespace polrec {

std::vector<double> p3_scores(const InteractionGraph& graph,
                              std::uint32_t user, double alpha) {
  if (user >= graph.num_users()) {
    throw Error(errc::unknown_user,
                "p3_scores: user index out of range: " + std::to_string(user));
  }
  if (!(alpha >= 0.0)) {
    throw Error(errc::invalid_params, "p3_scores: alpha must be >= 0");
  }

  // Two-hop expansion: mass over intermediate users after user->item->user,
  // then one more step onto items. Accumulation order is fixed (ascending
  // indices) so repeated calls are bit-identical.
  std::vector<double> user_mass(graph.num_users(), 0.0);
  const double w_u = std::pow(1.0 / graph.user_degree(user), alpha);
  for (std::uint32_t j : graph.items_of(user)) {
    const double w_uj = w_u * std::pow(1.0 / graph.item_degree(j), alpha);
    for (std::uint32_t v : graph.users_of(j)) user_mass[v] += w_uj;
  }

  std::vector<double> scores(graph.num_items(), 0.0);
  for (std::uint32_t v = 0; v < graph.num_users(); ++v) {
    if (user_mass[v] == 0.0) continue;
    const double w_v =
        user_mass[v] * std::pow(1.0 / graph.user_degree(v), alpha);
    for (std::uint32_t i : graph.items_of(v)) scores[i] += w_v;
  }
  return scores;
}

std::vector<double> rp3b_scores(const InteractionGraph& graph,
                                std::uint32_t user, const WalkParams& params) {
  if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
    throw Error(errc::invalid_params, "rp3b_scores: beta must be in [0, 1]");
  }
  std::vector<double> scores = p3_scores(graph, user, params.alpha);
  for (std::uint32_t i = 0; i < scores.size(); ++i) {
    if (scores[i] != 0.0) {
      scores[i] /= std::pow(static_cast<double>(graph.item_degree(i)),
                            params.beta);
    }
  }
  return scores;
}

std::vector<ScoredItem> recommend_topn(const InteractionGraph& graph,
                                       std::uint32_t user,
                                       const WalkParams& params, std::size_t n,
                                       bool exclude_seen) {
  std::vector<double> scores = rp3b_scores(graph, user, params);
  if (exclude_seen) {
    for (std::uint32_t i : graph.items_of(user)) scores[i] = 0.0;
  }

  std::vector<ScoredItem> ranked;
  for (std::uint32_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) ranked.push_back({i, scores[i]});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredItem& a, const ScoredItem& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.item < b.item;
            });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

}  // namespace polrec
