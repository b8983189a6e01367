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

#include "polrec/graph.hpp"

#include <algorithm>
#include <numeric>

#include "polrec/errors.hpp"

namespace polrec {

namespace {

std::uint32_t intern(std::vector<std::string>& names,
                     std::unordered_map<std::string, std::uint32_t>& index,
                     const std::string& id) {
  auto [it, inserted] =
      index.try_emplace(id, static_cast<std::uint32_t>(names.size()));
  if (inserted) names.push_back(id);
  return it->second;
}

}  // namespace

std::optional<std::uint32_t> InteractionGraph::user_index(
    std::string_view id) const {
  auto it = user_index_.find(std::string(id));
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> InteractionGraph::item_index(
    std::string_view id) const {
  auto it = item_index_.find(std::string(id));
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

bool InteractionGraph::has_edge(std::uint32_t user, std::uint32_t item) const {
  const auto items = items_of(user);
  return std::binary_search(items.begin(), items.end(), item);
}

InteractionGraph InteractionGraph::from_pairs(
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
    std::vector<std::string> user_ids, std::vector<std::string> item_ids) {
  InteractionGraph g;
  g.user_ids_ = std::move(user_ids);
  g.item_ids_ = std::move(item_ids);
  for (std::uint32_t u = 0; u < g.user_ids_.size(); ++u) {
    g.user_index_.emplace(g.user_ids_[u], u);
  }
  for (std::uint32_t i = 0; i < g.item_ids_.size(); ++i) {
    g.item_index_.emplace(g.item_ids_[i], i);
  }

  const std::size_t n_users = g.user_ids_.size();
  const std::size_t n_items = g.item_ids_.size();

  g.user_off_.assign(n_users + 1, 0);
  g.item_off_.assign(n_items + 1, 0);
  for (const auto& [u, i] : pairs) {
    ++g.user_off_[u + 1];
    ++g.item_off_[i + 1];
  }
  std::partial_sum(g.user_off_.begin(), g.user_off_.end(),
                   g.user_off_.begin());
  std::partial_sum(g.item_off_.begin(), g.item_off_.end(),
                   g.item_off_.begin());

  g.user_adj_.resize(pairs.size());
  g.item_adj_.resize(pairs.size());
  std::vector<std::size_t> user_fill(g.user_off_.begin(),
                                     g.user_off_.end() - 1);
  std::vector<std::size_t> item_fill(g.item_off_.begin(),
                                     g.item_off_.end() - 1);
  // pairs are sorted by (user, item), so both fills produce sorted adjacency.
  for (const auto& [u, i] : pairs) {
    g.user_adj_[user_fill[u]++] = i;
    g.item_adj_[item_fill[i]++] = u;
  }
  return g;
}

InteractionGraph build_graph(const std::vector<InteractionEvent>& events) {
  if (events.empty()) {
    throw Error(errc::empty_event_set, "build_graph: no events");
  }

  std::vector<std::string> user_ids, item_ids;
  std::unordered_map<std::string, std::uint32_t> user_index, item_index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(events.size());
  for (const auto& event : events) {
    const std::uint32_t u = intern(user_ids, user_index, event.user);
    const std::uint32_t i = intern(item_ids, item_index, event.item);
    pairs.emplace_back(u, i);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  return InteractionGraph::from_pairs(std::move(pairs), std::move(user_ids),
                                      std::move(item_ids));
}

InteractionGraph prune(const InteractionGraph& graph,
                       std::uint32_t min_user_deg,
                       std::uint32_t min_item_deg) {
  if (min_user_deg < 1 || min_item_deg < 1) {
    throw Error(errc::invalid_params, "prune: thresholds must be >= 1");
  }

  const std::size_t n_users = graph.num_users();
  const std::size_t n_items = graph.num_items();
  std::vector<char> user_alive(n_users, 1), item_alive(n_items, 1);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t u = 0; u < n_users; ++u) {
      if (!user_alive[u]) continue;
      std::uint32_t deg = 0;
      for (std::uint32_t i : graph.items_of(u)) deg += item_alive[i];
      if (deg < min_user_deg) {
        user_alive[u] = 0;
        changed = true;
      }
    }
    for (std::uint32_t i = 0; i < n_items; ++i) {
      if (!item_alive[i]) continue;
      std::uint32_t deg = 0;
      for (std::uint32_t u : graph.users_of(i)) deg += user_alive[u];
      if (deg < min_item_deg) {
        item_alive[i] = 0;
        changed = true;
      }
    }
  }

  // Re-index survivors densely, preserving relative order.
  constexpr std::uint32_t kGone = 0xffffffffu;
  std::vector<std::uint32_t> user_map(n_users, kGone), item_map(n_items, kGone);
  std::vector<std::string> user_ids, item_ids;
  for (std::uint32_t u = 0; u < n_users; ++u) {
    if (user_alive[u]) {
      user_map[u] = static_cast<std::uint32_t>(user_ids.size());
      user_ids.push_back(graph.user_id(u));
    }
  }
  for (std::uint32_t i = 0; i < n_items; ++i) {
    if (item_alive[i]) {
      item_map[i] = static_cast<std::uint32_t>(item_ids.size());
      item_ids.push_back(graph.item_id(i));
    }
  }
  if (user_ids.empty() || item_ids.empty()) {
    throw Error(errc::empty_after_prune, "prune: nothing survives");
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < n_users; ++u) {
    if (!user_alive[u]) continue;
    for (std::uint32_t i : graph.items_of(u)) {
      if (item_alive[i]) pairs.emplace_back(user_map[u], item_map[i]);
    }
  }
  // Monotone re-mapping keeps pairs sorted and unique.
  return InteractionGraph::from_pairs(std::move(pairs), std::move(user_ids),
                                      std::move(item_ids));
}

}  // namespace polrec
