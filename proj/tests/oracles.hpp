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

// Test-only oracles and fixtures. Everything here recomputes results by an
// independent route (dense linear algebra, exhaustive enumeration) and must
// stay decoupled from the sparse code paths it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "polrec/diversify.hpp"
#include "polrec/events.hpp"
#include "polrec/graph.hpp"
#include "polrec/rng.hpp"

namespace oracle {

// ---------------------------------------------------------------- fixtures

/// Two clean communities: users a,b share items x,y; users c,d share z,w.
inline std::vector<polrec::InteractionEvent> two_block_events() {
  std::vector<polrec::InteractionEvent> events;
  for (const auto& [u, i] : {std::pair{"a", "x"}, {"a", "y"}, {"b", "x"},
                             {"b", "y"}, {"c", "z"}, {"c", "w"}, {"d", "z"},
                             {"d", "w"}}) {
    events.push_back({u, i, std::nullopt, "share"});
  }
  return events;
}

/// Every user shares every item; the residual matrix is exactly zero.
inline std::vector<polrec::InteractionEvent> complete_bipartite_events(
    std::size_t n_users, std::size_t n_items) {
  std::vector<polrec::InteractionEvent> events;
  for (std::size_t u = 0; u < n_users; ++u) {
    for (std::size_t i = 0; i < n_items; ++i) {
      events.push_back({"u" + std::to_string(u), "i" + std::to_string(i),
                        std::nullopt, "share"});
    }
  }
  return events;
}

/// The walk examples' graph: u1 shares {i1,i2}, u2 shares {i2,i3}.
inline std::vector<polrec::InteractionEvent> chain_events() {
  return {{"u1", "i1", std::nullopt, "share"},
          {"u1", "i2", std::nullopt, "share"},
          {"u2", "i2", std::nullopt, "share"},
          {"u2", "i3", std::nullopt, "share"}};
}

/// Random bipartite events: each (u, i) pair is an edge with the given
/// density. Only users/items that received an edge end up in the graph.
inline std::vector<polrec::InteractionEvent> random_events(
    std::size_t n_users, std::size_t n_items, double density,
    std::uint64_t seed) {
  polrec::SplitMix64 rng(seed);
  std::vector<polrec::InteractionEvent> events;
  for (std::size_t u = 0; u < n_users; ++u) {
    for (std::size_t i = 0; i < n_items; ++i) {
      if (rng.next_double() < density) {
        events.push_back({"u" + std::to_string(u), "i" + std::to_string(i),
                          std::nullopt, "share"});
      }
    }
  }
  return events;
}

// ------------------------------------------------- dense residual operator

inline Eigen::MatrixXd dense_residual(const polrec::InteractionGraph& g) {
  const auto n_users = static_cast<Eigen::Index>(g.num_users());
  const auto n_items = static_cast<Eigen::Index>(g.num_items());
  const double n = static_cast<double>(g.num_edges());
  Eigen::MatrixXd s(n_users, n_items);
  for (Eigen::Index u = 0; u < n_users; ++u) {
    const double r = g.user_degree(static_cast<std::uint32_t>(u)) / n;
    for (Eigen::Index i = 0; i < n_items; ++i) {
      const double c = g.item_degree(static_cast<std::uint32_t>(i)) / n;
      const double p = g.has_edge(static_cast<std::uint32_t>(u),
                                  static_cast<std::uint32_t>(i))
                           ? 1.0 / n
                           : 0.0;
      s(u, i) = (p - r * c) / std::sqrt(r * c);
    }
  }
  return s;
}

struct DenseSvdResult {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  Eigen::VectorXd u1, v1;
};

inline DenseSvdResult dense_svd(const polrec::InteractionGraph& g) {
  const Eigen::MatrixXd s = dense_residual(g);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  DenseSvdResult out;
  out.sigma1 = svd.singularValues()(0);
  out.sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
  out.u1 = svd.matrixU().col(0);
  out.v1 = svd.matrixV().col(0);
  return out;
}

inline double cosine(std::span<const double> a, const Eigen::VectorXd& b) {
  double dot = 0.0, na = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b(static_cast<Eigen::Index>(k));
    na += a[k] * a[k];
  }
  return dot / (std::sqrt(na) * b.norm());
}

// --------------------------------------------------- dense three-step walk

/// Brute-force triple matrix product: W1 = R with rows scaled by
/// (1/d_u)^alpha, W2 = R^T with rows scaled by (1/d_i)^alpha; the score row
/// is (W1 W2 W1) for the chosen user.
inline std::vector<double> dense_p3(const polrec::InteractionGraph& g,
                                    std::uint32_t user, double alpha) {
  const auto n_users = static_cast<Eigen::Index>(g.num_users());
  const auto n_items = static_cast<Eigen::Index>(g.num_items());
  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(n_users, n_items);
  Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(n_items, n_users);
  for (std::uint32_t u = 0; u < g.num_users(); ++u) {
    const double w = std::pow(1.0 / g.user_degree(u), alpha);
    for (std::uint32_t i : g.items_of(u)) w1(u, i) = w;
  }
  for (std::uint32_t i = 0; i < g.num_items(); ++i) {
    const double w = std::pow(1.0 / g.item_degree(i), alpha);
    for (std::uint32_t u : g.users_of(i)) w2(i, u) = w;
  }
  const Eigen::MatrixXd product = w1 * w2 * w1;
  std::vector<double> scores(g.num_items());
  for (Eigen::Index i = 0; i < n_items; ++i) scores[i] = product(user, i);
  return scores;
}

inline std::vector<double> dense_rp3b(const polrec::InteractionGraph& g,
                                      std::uint32_t user, double alpha,
                                      double beta) {
  std::vector<double> scores = dense_p3(g, user, alpha);
  for (std::uint32_t i = 0; i < g.num_items(); ++i) {
    scores[i] /= std::pow(static_cast<double>(g.item_degree(i)), beta);
  }
  return scores;
}

// ------------------------------------------------------ brute-force greedy

/// Step-wise recomputation of the marginal-gain argmax: no incremental
/// caching, the min distance is recomputed over the whole selected set at
/// every step.
inline std::vector<polrec::Candidate> brute_greedy(
    std::span<const polrec::Candidate> pool, double lambda,
    std::size_t list_size) {
  double lo = pool[0].score, hi = pool[0].score;
  for (const auto& c : pool) {
    lo = std::min(lo, c.score);
    hi = std::max(hi, c.score);
  }
  auto norm = [&](double s) { return hi > lo ? (s - lo) / (hi - lo) : 1.0; };

  std::vector<std::size_t> remaining(pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) remaining[k] = k;
  std::vector<polrec::Candidate> picks;

  while (picks.size() < std::min(list_size, pool.size())) {
    bool found = false;
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t k : remaining) {
      double gain;
      if (picks.empty()) {
        gain = norm(pool[k].score);
      } else {
        double min_dist = std::abs(pool[k].phi - picks[0].phi);
        for (const auto& p : picks) {
          min_dist = std::min(min_dist, std::abs(pool[k].phi - p.phi));
        }
        gain = lambda * norm(pool[k].score) + (1.0 - lambda) * min_dist;
      }
      if (!found || gain > best ||
          (gain == best && pool[k].item < pool[arg].item)) {
        found = true;
        arg = k;
        best = gain;
      }
    }
    picks.push_back(pool[arg]);
    remaining.erase(std::find(remaining.begin(), remaining.end(), arg));
  }
  return picks;
}

// --------------------------------------------------------------- spearman

inline std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(std::span<const double> a, std::span<const double> b) {
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(ra.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    ma += ra[k];
    mb += rb[k];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    cov += (ra[k] - ma) * (rb[k] - mb);
    va += (ra[k] - ma) * (ra[k] - ma);
    vb += (rb[k] - mb) * (rb[k] - mb);
  }
  return cov / std::sqrt(va * vb);
}

}  // namespace oracle
