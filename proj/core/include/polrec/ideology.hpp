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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polrec/graph.hpp"

namespace polrec {

/// Users of known ideological side, used only to orient the latent axis.
/// Signs are -1 or +1; when used for alignment the set must contain at
/// least one of each and no duplicate identifiers.
struct AnchorSet {
  std::vector<std::pair<std::string, int>> entries;
};

struct FitOptions {
  double tol = 1e-9;     // stop when successive sigma1 estimates differ less
  int max_iter = 10000;  // iteration cap for the power method
  std::uint64_t seed = 42;  // seeds the start vector (splitmix64 normals)
};

/// One-dimensional ideological positions for all users (theta) and items
/// (phi) on a common standardized axis: theta has mean 0 and population
/// variance 1, and the same affine map was applied to phi so that
/// |phi_i - theta_u| is a meaningful distance. sigma1 is the leading
/// singular value of the standardized residual matrix, in [0, 1].
struct IdeologyModel {
  double sigma1 = 0.0;
  double mu = 0.0;  // affine standardization: subtract mu, divide by s
  double s = 1.0;
  int iterations = 0;
  std::vector<std::string> user_ids, item_ids;  // aligned with theta / phi
  std::vector<double> theta, phi;
};

/// Applies the standardized residual operator S = D_r^{-1/2} (P - r c^T)
/// D_c^{-1/2} to an item-space vector without materializing S, where
/// P = R/n, r_u = d_u/n, c_i = d_i/n. x must have length num_items and the
/// graph must have no zero-degree node on either side.
std::vector<double> residual_apply(const InteractionGraph& graph,
                                   std::span<const double> x);

/// The transpose: maps a user-space vector to item space.
std::vector<double> residual_apply_adjoint(const InteractionGraph& graph,
                                           std::span<const double> y);

struct SingularTriplet {
  double sigma1 = 0.0;
  std::vector<double> u;  // unit-norm user-side vector, u = S v / sigma1
  std::vector<double> v;  // unit-norm item-side vector
  int iterations = 0;
};

/// Leading singular triplet of S by power iteration on S^T S, started from
/// a seeded pseudo-random unit vector. Stops when successive sigma1
/// estimates differ by less than tol; throws Error(errc::not_converged)
/// when the cap is hit first and Error(errc::degenerate_dimension) when
/// sigma1 < 1e-8 (no ideological dimension exists, e.g. a complete
/// bipartite graph). Sign convention: the entry of v with the largest
/// magnitude is positive, ties resolved to the lowest index.
SingularTriplet leading_singular_triplet(const InteractionGraph& graph,
                                         const FitOptions& opts = {});

/// Fits positions from the leading triplet: standard coordinates
/// u[k]/sqrt(r_k) and v[k]/sqrt(c_k), optionally sign-flipped so the mean
/// user coordinate over +1 anchors is >= the mean over -1 anchors, then one
/// affine map (estimated on the user side) standardizes both sides.
IdeologyModel fit_ideology(const InteractionGraph& graph,
                           const AnchorSet* anchors = nullptr,
                           const FitOptions& opts = {});

/// Positions new content at the barycenter of its sharers' positions.
/// Throws Error(errc::empty_sharer_set) on an empty list.
double fold_in_item(std::span<const double> sharer_thetas);

/// Dual side: positions a new user at the barycenter of the items shared.
double fold_in_user(std::span<const double> shared_item_phis);

/// A model's positions re-indexed against a graph's internal indices.
/// Users absent from the model get NaN. Items absent get a barycenter
/// fold-in over their sharers' known positions, or NaN when no sharer has
/// one (counted in items_unpositioned).
struct AlignedPositions {
  std::vector<double> theta;  // per graph user index
  std::vector<double> phi;    // per graph item index
  std::size_t items_folded = 0;
  std::size_t items_unpositioned = 0;
};

AlignedPositions align_positions(const IdeologyModel& model,
                                 const InteractionGraph& graph);

/// Model file: a single JSON object with fields sigma1, mu, s, users
/// (external id -> theta) and items (external id -> phi).
void save_model(const std::filesystem::path& path, const IdeologyModel& model);
IdeologyModel load_model(const std::filesystem::path& path);

/// Anchor file: comma-separated text with header "user,sign", sign in
/// {-1, 1}. Malformed rows throw Error(errc::malformed_line).
AnchorSet load_anchors(const std::filesystem::path& path);

}  // namespace polrec
