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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "polrec/events.hpp"

namespace polrec {

/// Immutable binary bipartite user-item graph in CSR form, adjacency sorted
/// on both sides. Internal indices are dense and assigned by first
/// appearance in the event stream; external identifiers are kept for the
/// reverse mapping. Once built the graph never changes, so any number of
/// readers may use it concurrently.
class InteractionGraph {
 public:
  std::size_t num_users() const noexcept { return user_ids_.size(); }
  std::size_t num_items() const noexcept { return item_ids_.size(); }
  std::size_t num_edges() const noexcept { return user_adj_.size(); }

  std::span<const std::uint32_t> items_of(std::uint32_t user) const {
    return {user_adj_.data() + user_off_[user],
            user_adj_.data() + user_off_[user + 1]};
  }
  std::span<const std::uint32_t> users_of(std::uint32_t item) const {
    return {item_adj_.data() + item_off_[item],
            item_adj_.data() + item_off_[item + 1]};
  }

  std::uint32_t user_degree(std::uint32_t user) const {
    return static_cast<std::uint32_t>(user_off_[user + 1] - user_off_[user]);
  }
  std::uint32_t item_degree(std::uint32_t item) const {
    return static_cast<std::uint32_t>(item_off_[item + 1] - item_off_[item]);
  }

  const std::string& user_id(std::uint32_t user) const {
    return user_ids_[user];
  }
  const std::string& item_id(std::uint32_t item) const {
    return item_ids_[item];
  }

  std::optional<std::uint32_t> user_index(std::string_view id) const;
  std::optional<std::uint32_t> item_index(std::string_view id) const;

  bool has_edge(std::uint32_t user, std::uint32_t item) const;

 private:
  friend InteractionGraph build_graph(const std::vector<InteractionEvent>&);
  friend InteractionGraph prune(const InteractionGraph&, std::uint32_t,
                                std::uint32_t);

  // pairs must be sorted by (user, item) and duplicate-free.
  static InteractionGraph from_pairs(
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
      std::vector<std::string> user_ids, std::vector<std::string> item_ids);

  std::vector<std::size_t> user_off_, item_off_;
  std::vector<std::uint32_t> user_adj_, item_adj_;
  std::vector<std::string> user_ids_, item_ids_;
  std::unordered_map<std::string, std::uint32_t> user_index_, item_index_;
};

/// Collapses duplicate (user, item) pairs to single binary edges and builds
/// the graph. Throws Error(errc::empty_event_set) on an empty list.
InteractionGraph build_graph(const std::vector<InteractionEvent>& events);

/// Iteratively removes users with degree < min_user_deg and items with
/// degree < min_item_deg until a fixpoint, then re-indexes the survivors
/// densely (external identifiers unchanged). Thresholds must be >= 1.
/// Throws Error(errc::empty_after_prune) when nothing survives.
InteractionGraph prune(const InteractionGraph& graph,
                       std::uint32_t min_user_deg, std::uint32_t min_item_deg);

}  // namespace polrec
