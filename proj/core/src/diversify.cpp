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

#include "polrec/diversify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polrec/errors.hpp"

namespace polrec {

namespace {

void validate(const DiversifyParams& p) {
  if (!(p.lambda >= 0.0 && p.lambda <= 1.0)) {
    throw Error(errc::invalid_params, "lambda must be in [0, 1]");
  }
  if (!(p.tau > 0.0)) {
    throw Error(errc::invalid_params, "tau must be > 0");
  }
  if (p.list_size < 1 || p.list_size > p.pool_size) {
    throw Error(errc::invalid_params,
                "list_size must satisfy 1 <= list_size <= pool_size");
  }
}

}  // namespace

std::pair<std::vector<Candidate>, std::vector<Candidate>>
acceptability_filter(std::span<const Candidate> candidates, double theta_u,
                     double tau) {
  std::vector<Candidate> acceptable, rejected;
  for (const Candidate& c : candidates) {
    // NaN positions fail the comparison and land in rejected.
    if (std::abs(c.phi - theta_u) <= tau) {
      acceptable.push_back(c);
    } else {
      rejected.push_back(c);
    }
  }
  return {std::move(acceptable), std::move(rejected)};
}

std::vector<Candidate> greedy_rerank(std::span<const Candidate> pool,
                                     const DiversifyParams& params) {
  if (pool.empty()) {
    throw Error(errc::empty_pool, "greedy_rerank: empty pool");
  }
  validate(params);

  double lo = pool[0].score, hi = pool[0].score;
  for (const Candidate& c : pool) {
    lo = std::min(lo, c.score);
    hi = std::max(hi, c.score);
  }
  std::vector<double> norm_score(pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    norm_score[k] = hi > lo ? (pool[k].score - lo) / (hi - lo) : 1.0;
  }

  std::vector<char> taken(pool.size(), 0);
  // min distance to the already selected set, maintained incrementally
  std::vector<double> min_dist(pool.size(),
                               std::numeric_limits<double>::infinity());

  std::vector<Candidate> picks;
  const std::size_t want = std::min(params.list_size, pool.size());
  picks.reserve(want);

  // First pick: highest normalized score, ties to the lowest item index.
  std::size_t best = 0;
  for (std::size_t k = 1; k < pool.size(); ++k) {
    if (norm_score[k] > norm_score[best] ||
        (norm_score[k] == norm_score[best] && pool[k].item < pool[best].item)) {
      best = k;
    }
  }
  taken[best] = 1;
  picks.push_back(pool[best]);

  while (picks.size() < want) {
    const double last_phi = picks.back().phi;
    bool found = false;
    std::size_t arg = 0;
    double best_gain = 0.0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (taken[k]) continue;
      min_dist[k] = std::min(min_dist[k], std::abs(pool[k].phi - last_phi));
      const double gain = params.lambda * norm_score[k] +
                          (1.0 - params.lambda) * min_dist[k];
      if (!found || gain > best_gain ||
          (gain == best_gain && pool[k].item < pool[arg].item)) {
        found = true;
        arg = k;
        best_gain = gain;
      }
    }
    taken[arg] = 1;
    picks.push_back(pool[arg]);
  }
  return picks;
}

std::vector<Recommendation> diversify_recommend(const InteractionGraph& graph,
                                                const AlignedPositions& pos,
                                                std::uint32_t user,
                                                const WalkParams& walk,
                                                const DiversifyParams& params) {
  validate(params);
  if (user >= graph.num_users() || !std::isfinite(pos.theta[user])) {
    throw Error(errc::unknown_user,
                "diversify_recommend: no position for user index " +
                    std::to_string(user));
  }
  const double theta_u = pos.theta[user];

  const std::vector<ScoredItem> pool =
      recommend_topn(graph, user, walk, params.pool_size, true);
  if (pool.empty()) return {};

  std::vector<Candidate> candidates;
  candidates.reserve(pool.size());
  for (const ScoredItem& s : pool) {
    candidates.push_back({s.item, s.score, pos.phi[s.item]});
  }

  auto [acceptable, rejected] =
      acceptability_filter(candidates, theta_u, params.tau);

  std::vector<Recommendation> out;
  const std::size_t want = std::min(params.list_size, candidates.size());
  out.reserve(want);
  if (!acceptable.empty()) {
    for (const Candidate& c : greedy_rerank(acceptable, params)) {
      out.push_back({c.item, c.score, c.phi, false});
    }
  }
  // Too few acceptable candidates: keep the length contract by backfilling
  // from the rejected ones; pool order is already descending score with
  // index tie-break.
  for (const Candidate& c : rejected) {
    if (out.size() >= want) break;
    out.push_back({c.item, c.score, c.phi, true});
  }
  return out;
}

std::vector<Recommendation> diversify_recommend(const InteractionGraph& graph,
                                                const IdeologyModel& model,
                                                std::uint32_t user,
                                                const WalkParams& walk,
                                                const DiversifyParams& params) {
  return diversify_recommend(graph, align_positions(model, graph), user, walk,
                             params);
}

}  // namespace polrec
