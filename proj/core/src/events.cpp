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

#include "polrec/events.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "polrec/errors.hpp"

#include <json.hpp>

namespace polrec {

namespace {

bool all_whitespace(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

// Returns false when the line is not a valid event record.
bool parse_line(const std::string& line, InteractionEvent& out) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (!j.is_object()) return false;

  auto user = j.find("user");
  auto item = j.find("item");
  if (user == j.end() || !user->is_string()) return false;
  if (item == j.end() || !item->is_string()) return false;
  out.user = user->get<std::string>();
  out.item = item->get<std::string>();
  if (out.user.empty() || out.item.empty()) return false;

  out.ts.reset();
  if (auto ts = j.find("ts"); ts != j.end()) {
    if (!ts->is_number_integer()) return false;
    const auto value = ts->get<std::int64_t>();
    if (value < 0) return false;
    out.ts = value;
  }

  out.kind = "share";
  if (auto kind = j.find("kind"); kind != j.end()) {
    if (!kind->is_string()) return false;
    out.kind = kind->get<std::string>();
  }
  return true;
}

}  // namespace

std::vector<InteractionEvent> parse_events(std::istream& in, bool strict,
                                           ParseStats* stats) {
  std::vector<InteractionEvent> events;
  ParseStats local;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || all_whitespace(line)) continue;
    InteractionEvent event;
    if (parse_line(line, event)) {
      events.push_back(std::move(event));
      ++local.parsed;
    } else if (strict) {
      throw Error(errc::malformed_line,
                  "malformed event record at line " + std::to_string(line_no),
                  static_cast<std::int64_t>(line_no));
    } else {
      ++local.skipped;
    }
  }
  if (stats != nullptr) *stats = local;
  return events;
}

std::vector<InteractionEvent> load_events(const std::filesystem::path& path,
                                          bool strict, ParseStats* stats) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::io_failure,
                "cannot open event file: " + path.string());
  }
  return parse_events(in, strict, stats);
}

void write_events(std::ostream& out,
                  const std::vector<InteractionEvent>& events) {
  for (const auto& event : events) {
    nlohmann::ordered_json j;
    j["user"] = event.user;
    j["item"] = event.item;
    if (event.ts) j["ts"] = *event.ts;
    j["kind"] = event.kind;
    out << j.dump() << '\n';
  }
}

void save_events(const std::filesystem::path& path,
                 const std::vector<InteractionEvent>& events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(errc::io_failure,
                "cannot write event file: " + path.string());
  }
  write_events(out, events);
}

}  // namespace polrec
