// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace docfocus {

enum class ErrorCode {
  invalid_argument,
  out_of_bounds,
  schema_violation,
  empty_content,
  duplicate_id,
  not_found,
  image_io,
  placement_infeasible,
  color_hybrid_infeasible,
  no_content,
  insufficient_data,
  no_qualifying_box,
  reserved_delimiter,
  tie_unbreakable,
  missing_source,
  insufficient_corpus,
  no_overlap,
  annotator_failure,
  invalid_config,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

/// Errors that mean "this page or bundle cannot yield a sample" rather than a
/// broken input; batch generators skip and count them.
bool is_sample_skip(ErrorCode code) noexcept;

}  // namespace docfocus
