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

#include "docfocus/annotator.hpp"
#include "docfocus/compositor.hpp"
#include "docfocus/conversation.hpp"
#include "docfocus/corpus.hpp"

namespace docfocus {

inline constexpr std::array<std::string_view, 10> kSplitNames = {
    "en_page",     "zh_page", "color",   "region",        "line",
    "translation", "summary", "caption", "multipage_ocr", "crosspage_vqa"};

struct BenchmarkSplit {
  std::string name;
  std::vector<ConversationSample> samples;
};

struct BenchmarkConfig {
  std::size_t en_pages = 112;
  std::size_t zh_pages = 100;
  std::size_t caption_pages = 200;
  std::size_t multipage_bundles = 100;
  std::size_t crosspage_bundles = 100;
  std::size_t bundle_pages = 8;
  /// Dense-page splits only take pages with more words than this (CJK text
  /// counts characters).
  std::size_t min_words = 1000;
  ScaleParams scale;
  std::size_t workers = 1;
};

/// Words on a page: whitespace tokens, or scalar values for CJK-dominant text.
std::size_t page_word_count(const PageRecord& page);

/// Builds every split deterministically from the seed. Composited pages for
/// the color and caption splits are written under `image_dir`; their refs in
/// the samples are `image_prefix` + file name. Throws
/// Error(insufficient_corpus) when the corpus cannot fill a split.
std::vector<BenchmarkSplit> build_benchmark(const Corpus& corpus, const BenchmarkConfig& config,
                                            std::uint64_t seed, Annotator& annotator,
                                            const std::filesystem::path& image_dir,
                                            const std::string& image_prefix);

/// <dir>/<split>.jsonl plus <dir>/manifest.json with per-split digests.
nlohmann::json write_benchmark(const std::vector<BenchmarkSplit>& splits,
                               const std::filesystem::path& dir);
std::vector<BenchmarkSplit> read_benchmark(const std::filesystem::path& dir);

/// Predictions equal to the ground truth, as a JSONL-ready list.
std::vector<nlohmann::json> gold_predictions(const std::vector<BenchmarkSplit>& splits);

using PredictionFile = std::map<std::string, std::string>;

/// Reads JSONL {"id", "prediction"}.
PredictionFile read_predictions(const std::filesystem::path& path);

struct MetricReport {
  std::string split;
  std::size_t samples = 0;
  std::size_t missing = 0;
  std::optional<double> edit_distance;
  std::optional<double> f1;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> bleu;
  std::optional<double> meteor;
  std::optional<double> rouge_l_r;
  std::optional<double> rouge_l_p;
  std::optional<double> rouge_l_f;
  std::optional<double> accuracy;
};

/// Scores a split. Missing predictions count as empty strings. Throws
/// Error(no_overlap) when no prediction id belongs to the split.
MetricReport evaluate(const BenchmarkSplit& split, const PredictionFile& predictions,
                      std::size_t workers = 1);

struct RenderedReport {
  std::string markdown;
  nlohmann::json json;
};

/// One aligned markdown table per column layout present, absent values as "-".
RenderedReport render_report(const std::vector<MetricReport>& reports);
std::string render_markdown(const std::vector<MetricReport>& reports);
std::vector<MetricReport> reports_from_json(const nlohmann::json& j);

}  // namespace docfocus
