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

#include "polrec/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "polrec/errors.hpp"
#include "polrec/rng.hpp"

namespace polrec {

namespace {

void validate(const SynthParams& p) {
  const bool ok = p.n_users >= 2 && p.n_items >= 2 && p.std_dev > 0.0 &&
                  p.rho > 0.0 && p.rho <= 1.0 && p.bandwidth > 0.0 &&
                  std::isfinite(p.mean_a) && std::isfinite(p.mean_b);
  if (!ok) {
    throw Error(errc::invalid_params, "generate_synthetic: bad parameters");
  }
}

// Shortest round-trip decimal form, so files are byte-stable across runs.
std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

SynthDataset generate_synthetic(const SynthParams& params) {
  validate(params);

  SynthDataset data;
  SplitMix64 rng(params.seed);

  const std::size_t users_a = (params.n_users + 1) / 2;
  data.true_theta.resize(params.n_users);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    const double mean = u < users_a ? params.mean_a : params.mean_b;
    data.true_theta[u] = mean + params.std_dev * rng.next_normal();
  }
  const std::size_t items_a = (params.n_items + 1) / 2;
  data.true_phi.resize(params.n_items);
  for (std::size_t i = 0; i < params.n_items; ++i) {
    const double mean = i < items_a ? params.mean_a : params.mean_b;
    data.true_phi[i] = mean + params.std_dev * rng.next_normal();
  }

  const double two_bw_sq = 2.0 * params.bandwidth * params.bandwidth;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint32_t> user_degree(params.n_users, 0);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    for (std::size_t i = 0; i < params.n_items; ++i) {
      const double d = data.true_theta[u] - data.true_phi[i];
      const double p = std::min(1.0, params.rho * std::exp(-d * d / two_bw_sq));
      if (rng.next_double() < p) {
        pairs.emplace_back(static_cast<std::uint32_t>(u),
                           static_cast<std::uint32_t>(i));
        ++user_degree[u];
      }
    }
  }

  // Repair: an all-miss user gets one share of its nearest item.
  for (std::size_t u = 0; u < params.n_users; ++u) {
    if (user_degree[u] > 0) continue;
    std::size_t nearest = 0;
    double best = std::abs(data.true_theta[u] - data.true_phi[0]);
    for (std::size_t i = 1; i < params.n_items; ++i) {
      const double d = std::abs(data.true_theta[u] - data.true_phi[i]);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    pairs.emplace_back(static_cast<std::uint32_t>(u),
                       static_cast<std::uint32_t>(nearest));
  }
  std::sort(pairs.begin(), pairs.end());

  data.events.reserve(pairs.size());
  std::int64_t ts = 0;
  for (const auto& [u, i] : pairs) {
    InteractionEvent event;
    event.user = "u" + std::to_string(u);
    event.item = "i" + std::to_string(i);
    event.ts = ts++;
    event.kind = "share";
    data.events.push_back(std::move(event));
  }
  return data;
}

void write_truth(std::ostream& out, const SynthDataset& data) {
  out << "id,kind,position\n";
  for (std::size_t u = 0; u < data.true_theta.size(); ++u) {
    out << 'u' << u << ",user," << format_double(data.true_theta[u]) << '\n';
  }
  for (std::size_t i = 0; i < data.true_phi.size(); ++i) {
    out << 'i' << i << ",item," << format_double(data.true_phi[i]) << '\n';
  }
}

void save_truth(const std::filesystem::path& path, const SynthDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(errc::io_failure,
                "cannot write truth file: " + path.string());
  }
  write_truth(out, data);
}

}  // namespace polrec
