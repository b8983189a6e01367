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

#include "polrec/ideology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "polrec/errors.hpp"
#include "polrec/rng.hpp"

#include <json.hpp>

namespace polrec {

namespace {

constexpr double kDegenerateSigma = 1e-8;

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

void require_no_zero_degrees(const InteractionGraph& graph) {
  // Built graphs cannot contain isolated nodes, but the operator contract
  // promises the check, and a hand-constructed graph could violate it.
  for (std::uint32_t u = 0; u < graph.num_users(); ++u) {
    if (graph.user_degree(u) == 0) {
      throw Error(errc::zero_degree_node,
                  "residual operator: zero-degree user " + graph.user_id(u));
    }
  }
  for (std::uint32_t i = 0; i < graph.num_items(); ++i) {
    if (graph.item_degree(i) == 0) {
      throw Error(errc::zero_degree_node,
                  "residual operator: zero-degree item " + graph.item_id(i));
    }
  }
}

}  // namespace

std::vector<double> residual_apply(const InteractionGraph& graph,
                                   std::span<const double> x) {
  if (x.size() != graph.num_items()) {
    throw Error(errc::dimension_mismatch,
                "residual_apply: vector length != num_items");
  }
  require_no_zero_degrees(graph);

  const double n = static_cast<double>(graph.num_edges());
  // z = D_c^{-1/2} x
  std::vector<double> z(x.size());
  double cz = 0.0;  // c^T z
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double c = graph.item_degree(static_cast<std::uint32_t>(i)) / n;
    z[i] = x[i] / std::sqrt(c);
    cz += c * z[i];
  }
  // y = D_r^{-1/2} (P z - r (c^T z))
  std::vector<double> y(graph.num_users());
  for (std::uint32_t u = 0; u < graph.num_users(); ++u) {
    double acc = 0.0;
    for (std::uint32_t i : graph.items_of(u)) acc += z[i];
    const double r = graph.user_degree(u) / n;
    y[u] = (acc / n - r * cz) / std::sqrt(r);
  }
  return y;
}

std::vector<double> residual_apply_adjoint(const InteractionGraph& graph,
                                           std::span<const double> y) {
  if (y.size() != graph.num_users()) {
    throw Error(errc::dimension_mismatch,
                "residual_apply_adjoint: vector length != num_users");
  }
  require_no_zero_degrees(graph);

  const double n = static_cast<double>(graph.num_edges());
  std::vector<double> w(y.size());
  double rw = 0.0;  // r^T w
  for (std::size_t u = 0; u < w.size(); ++u) {
    const double r = graph.user_degree(static_cast<std::uint32_t>(u)) / n;
    w[u] = y[u] / std::sqrt(r);
    rw += r * w[u];
  }
  std::vector<double> x(graph.num_items());
  for (std::uint32_t i = 0; i < graph.num_items(); ++i) {
    double acc = 0.0;
    for (std::uint32_t u : graph.users_of(i)) acc += w[u];
    const double c = graph.item_degree(i) / n;
    x[i] = (acc / n - c * rw) / std::sqrt(c);
  }
  return x;
}

SingularTriplet leading_singular_triplet(const InteractionGraph& graph,
                                         const FitOptions& opts) {
  if (opts.tol <= 0.0 || opts.max_iter < 1) {
    throw Error(errc::invalid_params,
                "leading_singular_triplet: tol must be > 0, max_iter >= 1");
  }
  if (graph.num_users() < 2 || graph.num_items() < 2) {
    throw Error(errc::invalid_params,
                "leading_singular_triplet: need >= 2 users and >= 2 items");
  }
  require_no_zero_degrees(graph);

  // Seeded random start: symmetric graphs make deterministic starts such as
  // the all-ones vector exactly orthogonal to the answer.
  SplitMix64 rng(opts.seed);
  std::vector<double> v(graph.num_items());
  for (double& entry : v) entry = rng.next_normal();
  {
    const double nv = norm2(v);
    for (double& entry : v) entry /= nv;
  }

  double sigma = 0.0;
  double sigma_prev = -1.0;
  bool converged = false;
  int iterations = 0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    iterations = iter;
    std::vector<double> w = residual_apply(graph, v);
    sigma = norm2(w);
    std::vector<double> t = residual_apply_adjoint(graph, w);
    const double tn = norm2(t);
    if (tn > 0.0) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = t[i] / tn;
    }
    if (std::abs(sigma - sigma_prev) < opts.tol) {
      converged = true;
      break;
    }
    sigma_prev = sigma;
  }
  if (!converged) {
    throw Error(errc::not_converged,
                "power iteration did not reach tolerance in " +
                    std::to_string(opts.max_iter) + " iterations",
                opts.max_iter);
  }
  if (sigma < kDegenerateSigma) {
    throw Error(errc::degenerate_dimension,
                "leading singular value is numerically zero; the graph "
                "carries no ideological dimension");
  }

  // Recompute the user side against the final v so that u = S v / sigma
  // holds exactly for the returned triplet.
  std::vector<double> u = residual_apply(graph, v);
  sigma = norm2(u);
  for (double& entry : u) entry /= sigma;

  // Sign convention before any anchoring: largest-magnitude entry of v is
  // positive, ties resolved to the lowest index.
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  }
  if (v[pivot] < 0.0) {
    for (double& entry : v) entry = -entry;
    for (double& entry : u) entry = -entry;
  }

  return SingularTriplet{sigma, std::move(u), std::move(v), iterations};
}

IdeologyModel fit_ideology(const InteractionGraph& graph,
                           const AnchorSet* anchors, const FitOptions& opts) {
  SingularTriplet triplet = leading_singular_triplet(graph, opts);

  const double n = static_cast<double>(graph.num_edges());
  std::vector<double> x(graph.num_users()), y(graph.num_items());
  for (std::uint32_t u = 0; u < graph.num_users(); ++u) {
    x[u] = triplet.u[u] / std::sqrt(graph.user_degree(u) / n);
  }
  for (std::uint32_t i = 0; i < graph.num_items(); ++i) {
    y[i] = triplet.v[i] / std::sqrt(graph.item_degree(i) / n);
  }

  if (anchors != nullptr && !anchors->entries.empty()) {
    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t pos_count = 0, neg_count = 0;
    std::unordered_set<std::string> seen;
    for (const auto& [id, sign] : anchors->entries) {
      if (sign != 1 && sign != -1) {
        throw Error(errc::invalid_params,
                    "anchor sign must be -1 or 1 for user " + id);
      }
      if (!seen.insert(id).second) {
        throw Error(errc::invalid_params, "duplicate anchor user " + id);
      }
      const auto index = graph.user_index(id);
      if (!index) {
        throw Error(errc::unknown_anchor,
                    "anchor user not in graph: " + id);
      }
      if (sign > 0) {
        pos_sum += x[*index];
        ++pos_count;
      } else {
        neg_sum += x[*index];
        ++neg_count;
      }
    }
    if (pos_count == 0 || neg_count == 0) {
      throw Error(errc::invalid_params,
                  "anchor set needs at least one +1 and one -1 entry");
    }
    if (pos_sum / pos_count < neg_sum / neg_count) {
      for (double& entry : x) entry = -entry;
      for (double& entry : y) entry = -entry;
    }
  }

  double mu = 0.0;
  for (double entry : x) mu += entry;
  mu /= static_cast<double>(x.size());
  double var = 0.0;
  for (double entry : x) var += (entry - mu) * (entry - mu);
  var /= static_cast<double>(x.size());
  const double s = std::sqrt(var);
  if (!(s > 1e-15)) {
    throw Error(errc::zero_variance,
                "user coordinates have zero variance; cannot standardize");
  }

  IdeologyModel model;
  model.sigma1 = triplet.sigma1;
  model.mu = mu;
  model.s = s;
  model.iterations = triplet.iterations;
  model.user_ids.reserve(graph.num_users());
  for (std::uint32_t u = 0; u < graph.num_users(); ++u) {
    model.user_ids.push_back(graph.user_id(u));
  }
  model.item_ids.reserve(graph.num_items());
  for (std::uint32_t i = 0; i < graph.num_items(); ++i) {
    model.item_ids.push_back(graph.item_id(i));
  }
  model.theta.resize(x.size());
  model.phi.resize(y.size());
  for (std::size_t u = 0; u < x.size(); ++u) model.theta[u] = (x[u] - mu) / s;
  for (std::size_t i = 0; i < y.size(); ++i) model.phi[i] = (y[i] - mu) / s;
  return model;
}

double fold_in_item(std::span<const double> sharer_thetas) {
  if (sharer_thetas.empty()) {
    throw Error(errc::empty_sharer_set, "fold_in_item: no sharers");
  }
  double acc = 0.0;
  for (double theta : sharer_thetas) acc += theta;
  return acc / static_cast<double>(sharer_thetas.size());
}

double fold_in_user(std::span<const double> shared_item_phis) {
  if (shared_item_phis.empty()) {
    throw Error(errc::empty_sharer_set, "fold_in_user: no shared items");
  }
  double acc = 0.0;
  for (double phi : shared_item_phis) acc += phi;
  return acc / static_cast<double>(shared_item_phis.size());
}

AlignedPositions align_positions(const IdeologyModel& model,
                                 const InteractionGraph& graph) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  std::unordered_map<std::string, double> theta_by_id, phi_by_id;
  theta_by_id.reserve(model.user_ids.size());
  for (std::size_t k = 0; k < model.user_ids.size(); ++k) {
    theta_by_id.emplace(model.user_ids[k], model.theta[k]);
  }
  phi_by_id.reserve(model.item_ids.size());
  for (std::size_t k = 0; k < model.item_ids.size(); ++k) {
    phi_by_id.emplace(model.item_ids[k], model.phi[k]);
  }

  AlignedPositions out;
  out.theta.assign(graph.num_users(), kNaN);
  for (std::uint32_t u = 0; u < graph.num_users(); ++u) {
    if (auto it = theta_by_id.find(graph.user_id(u)); it != theta_by_id.end()) {
      out.theta[u] = it->second;
    }
  }
  out.phi.assign(graph.num_items(), kNaN);
  for (std::uint32_t i = 0; i < graph.num_items(); ++i) {
    if (auto it = phi_by_id.find(graph.item_id(i)); it != phi_by_id.end()) {
      out.phi[i] = it->second;
      continue;
    }
    // Unfitted item: barycenter of its sharers' known positions.
    std::vector<double> sharers;
    for (std::uint32_t u : graph.users_of(i)) {
      if (std::isfinite(out.theta[u])) sharers.push_back(out.theta[u]);
    }
    if (!sharers.empty()) {
      out.phi[i] = fold_in_item(sharers);
      ++out.items_folded;
    } else {
      ++out.items_unpositioned;
    }
  }
  return out;
}

void save_model(const std::filesystem::path& path,
                const IdeologyModel& model) {
  nlohmann::json users = nlohmann::json::object();
  for (std::size_t k = 0; k < model.user_ids.size(); ++k) {
    users[model.user_ids[k]] = model.theta[k];
  }
  nlohmann::json items = nlohmann::json::object();
  for (std::size_t k = 0; k < model.item_ids.size(); ++k) {
    items[model.item_ids[k]] = model.phi[k];
  }
  nlohmann::json j;
  j["sigma1"] = model.sigma1;
  j["mu"] = model.mu;
  j["s"] = model.s;
  j["users"] = std::move(users);
  j["items"] = std::move(items);

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(errc::io_failure, "cannot write model file: " + path.string());
  }
  out << j.dump(2) << '\n';
}

IdeologyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::io_failure, "cannot open model file: " + path.string());
  }
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("sigma1") ||
      !j.contains("mu") || !j.contains("s") || !j["users"].is_object() ||
      !j["items"].is_object()) {
    throw Error(errc::io_failure, "not a model file: " + path.string());
  }
  IdeologyModel model;
  model.sigma1 = j["sigma1"].get<double>();
  model.mu = j["mu"].get<double>();
  model.s = j["s"].get<double>();
  for (const auto& [id, value] : j["users"].items()) {
    model.user_ids.push_back(id);
    model.theta.push_back(value.get<double>());
  }
  for (const auto& [id, value] : j["items"].items()) {
    model.item_ids.push_back(id);
    model.phi.push_back(value.get<double>());
  }
  return model;
}

AnchorSet load_anchors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::io_failure, "cannot open anchor file: " + path.string());
  }
  AnchorSet anchors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "user,sign") {
        throw Error(errc::malformed_line,
                    "anchor file must start with header \"user,sign\"",
                    static_cast<std::int64_t>(line_no));
      }
      continue;
    }
    const auto comma = line.find(',');
    const std::string user = comma == std::string::npos ? "" : line.substr(0, comma);
    const std::string sign = comma == std::string::npos ? "" : line.substr(comma + 1);
    if (user.empty() || (sign != "1" && sign != "-1" && sign != "+1")) {
      throw Error(errc::malformed_line,
                  "malformed anchor row at line " + std::to_string(line_no),
                  static_cast<std::int64_t>(line_no));
    }
    anchors.entries.emplace_back(user, sign == "-1" ? -1 : 1);
  }
  return anchors;
}

}  // namespace polrec
