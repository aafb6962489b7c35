// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "docfocus/conversation.hpp"

namespace docfocus {

using Json = nlohmann::json;

/// Named sample streams. Names are task names, or task-derived stream names
/// such as "figure_caption_blip558k", or opaque pass-through streams
/// ("natural_caption", "nlp_alpaca", ...). Every record carries an "id".
using SourceMap = std::map<std::string, std::vector<Json>>;

struct Recipe {
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> counts;
  /// Prompt phrasings for SFT rewriting; empty means the built-in set.
  std::map<Task, std::vector<std::string>> variants;
  /// Optional stream name -> JSONL path overrides.
  std::map<std::string, std::string> sources;
};

/// Pre-training quantities per stream. Caption and layout data keep their
/// two origins as separate streams.
Recipe default_recipe();

/// Multiplies every count by `factor`, rounding half up.
Recipe scale_recipe(const Recipe& recipe, double factor);

Recipe recipe_from_json(const Json& j);
Json to_json(const Recipe& recipe);

/// Task a stream feeds, or nullopt for pass-through streams.
std::optional<Task> stream_task(std::string_view stream);

struct StreamCount {
  std::size_t target = 0;
  std::size_t achieved = 0;
  std::size_t available = 0;
};

struct MixManifest {
  std::uint64_t seed = 0;
  std::map<std::string, StreamCount> streams;
  std::size_t total = 0;
  std::string digest;  // sha256 of the emitted JSONL bytes
  std::vector<std::string> warnings;
};

Json to_json(const MixManifest& manifest);

struct MixResult {
  std::vector<Json> records;
  MixManifest manifest;
};

/// Takes up to the target count from the head of each stream (single epoch,
/// no repeats, duplicate ids skipped), then interleaves everything with a
/// seeded Fisher-Yates shuffle. Throws Error(missing_source) when a stream
/// with a nonzero target is absent.
MixResult mix(const SourceMap& sources, const Recipe& recipe, std::uint64_t seed);

/// Picks k records per stream and rewrites every user prompt of a generated
/// sample into a seeded-uniform choice among its task's phrasings, keeping
/// the slot values (coordinates, colors, page lists) verbatim. Streams with
/// fewer than k records are taken whole and reported in the warnings.
MixResult sft_sample(const SourceMap& pretrain, std::size_t k,
                     const std::map<Task, std::vector<std::string>>& variants, std::uint64_t seed);

/// Records as JSONL text, one compact object per line.
std::string to_jsonl(const std::vector<Json>& records);

}  // namespace docfocus
