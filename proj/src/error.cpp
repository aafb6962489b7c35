// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/error.hpp"

namespace docfocus {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::out_of_bounds: return "out-of-bounds";
    case ErrorCode::schema_violation: return "schema-violation";
    case ErrorCode::empty_content: return "empty-content";
    case ErrorCode::duplicate_id: return "duplicate-id";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::image_io: return "image-io";
    case ErrorCode::placement_infeasible: return "placement-infeasible";
    case ErrorCode::color_hybrid_infeasible: return "color-hybrid-infeasible";
    case ErrorCode::no_content: return "no-content";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::no_qualifying_box: return "no-qualifying-box";
    case ErrorCode::reserved_delimiter: return "reserved-delimiter";
    case ErrorCode::tie_unbreakable: return "tie-unbreakable";
    case ErrorCode::missing_source: return "missing-source";
    case ErrorCode::insufficient_corpus: return "insufficient-corpus";
    case ErrorCode::no_overlap: return "no-overlap";
    case ErrorCode::annotator_failure: return "annotator-failure";
    case ErrorCode::invalid_config: return "invalid-config";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

bool is_sample_skip(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::no_content:
    case ErrorCode::insufficient_data:
    case ErrorCode::no_qualifying_box:
    case ErrorCode::color_hybrid_infeasible:
    case ErrorCode::placement_infeasible:
    case ErrorCode::tie_unbreakable:
    case ErrorCode::reserved_delimiter:
      return true;
    default:
      return false;
  }
}

}  // namespace docfocus
