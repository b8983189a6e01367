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
#include <vector>

#include "polrec/events.hpp"

namespace polrec {

/// Two-community world: the first half of users (and items) draw positions
/// from Normal(mean_a, std^2), the rest from Normal(mean_b, std^2); a user
/// shares an item with probability
///   p = min(1, rho * exp(-(theta_u - phi_i)^2 / (2 * bandwidth^2))).
struct SynthParams {
  std::size_t n_users = 0;  // >= 2
  std::size_t n_items = 0;  // >= 2
  double mean_a = -1.0;
  double mean_b = 1.0;
  double std_dev = 0.25;   // within-community std, > 0
  double rho = 0.05;       // base share rate, in (0, 1]
  double bandwidth = 0.5;  // affinity bandwidth, > 0
  std::uint64_t seed = 0;
};

struct SynthDataset {
  std::vector<InteractionEvent> events;  // identifiers "u0..", "i0.."
  std::vector<double> true_theta;        // ground truth per user index
  std::vector<double> true_phi;          // ground truth per item index
};

/// Deterministic generation: positions are drawn in index order, then every
/// (user, item) pair gets an independent Bernoulli draw in user-major
/// order. Any user left with zero shares is repaired with one share of its
/// nearest-position item (ties to the lowest index). Events come out in
/// (user, item) lexicographic index order with sequential timestamps.
/// Identical params reproduce bit-identical datasets.
SynthDataset generate_synthetic(const SynthParams& params);

/// Ground-truth file: comma-separated with header "id,kind,position",
/// kind in {user, item}; users first, then items, both in index order.
void write_truth(std::ostream& out, const SynthDataset& data);
void save_truth(const std::filesystem::path& path, const SynthDataset& data);

}  // namespace polrec
