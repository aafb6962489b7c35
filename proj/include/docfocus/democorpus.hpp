// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

namespace docfocus {

/// Synthetic stand-in for a document corpus: rasterized pages whose words are
/// drawn as dark bars, gradient "natural" images with captions and region
/// dialogs, and layout annotations for every page.
struct DemoCorpusConfig {
  std::size_t en_pages = 130;
  std::size_t zh_pages = 115;
  std::size_t mixed_pages = 10;
  std::size_t naturals = 220;
  /// Every n-th page of a language is sparse (well under 1000 words).
  std::size_t sparse_every = 10;
  int page_width = 816;
  int page_height = 1056;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct DemoCorpusFiles {
  std::filesystem::path pages;
  std::filesystem::path naturals;
  std::filesystem::path layouts;
};

/// Writes pages.jsonl, naturals.jsonl, layouts.jsonl and images/ under dir.
/// Output bytes depend only on the config.
DemoCorpusFiles write_demo_corpus(const DemoCorpusConfig& config, const std::filesystem::path& dir);

}  // namespace docfocus
