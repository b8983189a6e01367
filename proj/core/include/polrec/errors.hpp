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
#include <stdexcept>
#include <string>

namespace polrec {

/// Every failure the library reports deliberately carries one of these codes.
enum class errc {
  malformed_line,
  empty_event_set,
  empty_after_prune,
  dimension_mismatch,
  zero_degree_node,
  not_converged,
  degenerate_dimension,
  unknown_anchor,
  zero_variance,
  empty_sharer_set,
  unknown_user,
  empty_pool,
  empty_holdout,
  too_few_items,
  empty_list,
  no_evaluable_users,
  invalid_params,
  io_failure,
};

// not_converged, degenerate_dimension and zero_variance are numerical
// breakdowns; everything else is bad input. The CLI maps the two classes to
// distinct exit codes.
inline bool is_numeric_error(errc code) noexcept {
  return code == errc::not_converged || code == errc::degenerate_dimension ||
         code == errc::zero_variance;
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(errc code, const std::string& message, std::int64_t detail)
      : std::runtime_error(message), code_(code), detail_(detail) {}

  errc code() const noexcept { return code_; }

  /// Code-specific payload: 1-based line number for malformed_line, the
  /// iteration cap for not_converged; -1 when the code carries none.
  std::int64_t detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::int64_t detail_ = -1;
};

}  // namespace polrec
