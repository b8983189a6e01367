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
#include <optional>
#include <string>
#include <vector>

namespace polrec {

/// One share of an item by a user. The kind tag is parsed and preserved but
/// carries no weight downstream; only one signal type is modelled.
struct InteractionEvent {
  std::string user;
  std::string item;
  std::optional<std::int64_t> ts;  // Unix seconds, non-negative when present
  std::string kind = "share";
};

struct ParseStats {
  std::size_t parsed = 0;
  std::size_t skipped = 0;  // malformed lines dropped in lenient mode
};

/// Reads newline-delimited event records, one JSON object per line with
/// required string fields "user" and "item", optional integer "ts" (>= 0)
/// and optional string "kind". In strict mode the first malformed line
/// throws Error(errc::malformed_line) carrying its 1-based line number; in
/// lenient mode malformed lines are counted in stats and skipped. Blank
/// lines are ignored in both modes. An empty stream yields an empty list.
std::vector<InteractionEvent> parse_events(std::istream& in, bool strict,
                                           ParseStats* stats = nullptr);

std::vector<InteractionEvent> load_events(const std::filesystem::path& path,
                                          bool strict,
                                          ParseStats* stats = nullptr);

/// Writes events in the same line format parse_events reads, fields in the
/// order user, item, ts, kind; ts is omitted when absent.
void write_events(std::ostream& out,
                  const std::vector<InteractionEvent>& events);

void save_events(const std::filesystem::path& path,
                 const std::vector<InteractionEvent>& events);

}  // namespace polrec
