// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "docfocus/annotator.hpp"
#include "docfocus/compositor.hpp"
#include "docfocus/conversation.hpp"
#include "docfocus/corpus.hpp"
#include "docfocus/harness.hpp"

namespace docfocus {

struct PipelineConfig {
  std::filesystem::path pages = "corpus/pages.jsonl";
  std::filesystem::path naturals = "corpus/naturals.jsonl";
  std::filesystem::path layouts = "corpus/layouts.jsonl";
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  ScaleParams scale;
  /// Fraction of pages allowed to fail ingestion or synthesis.
  double skip_tolerance = 0.01;
  std::optional<std::filesystem::path> recipe;
  double recipe_scale = 1.0;
  std::size_t sft_per_stream = 100;
  std::size_t gen_turns = 1;
  /// Multi-page bundles per task; 0 means one per page.
  std::size_t gen_bundles = 0;
  std::optional<CommandAnnotatorOptions> annotator;
  BenchmarkConfig bench;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads DOCFOCUS_SEED, DOCFOCUS_WORKERS, DOCFOCUS_OUT, DOCFOCUS_ANNOTATOR.
EnvLookup process_env();

/// Parses a JSON config; relative paths resolve against `base_dir`.
/// Environment overrides are applied last. Throws Error(invalid_config).
PipelineConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                            const EnvLookup& env);
PipelineConfig load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env);
void validate(const PipelineConfig& config);

/// Pages (required), naturals and layouts (when the files exist). Rejected
/// records beyond the skip tolerance throw Error(insufficient_data).
Corpus load_corpus(const PipelineConfig& config, std::vector<RejectedRecord>* rejected = nullptr);

std::unique_ptr<Annotator> make_annotator(const PipelineConfig& config);

/// Each command writes under config.out and returns its manifest.
nlohmann::json run_ingest(const PipelineConfig& config);
nlohmann::json run_synth(const PipelineConfig& config, std::optional<std::size_t> limit);
nlohmann::json run_gen(const PipelineConfig& config, const std::vector<Task>& tasks,
                       std::optional<std::size_t> limit);
nlohmann::json run_mix(const PipelineConfig& config);
nlohmann::json run_bench_build(const PipelineConfig& config, bool gold);
RenderedReport run_bench_eval(const PipelineConfig& config, const std::filesystem::path& predictions,
                              const std::optional<std::string>& split);
nlohmann::json run_stats(const PipelineConfig& config);

}  // namespace docfocus
