// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "docfocus/corpus.hpp"

namespace docfocus::testing {

inline PageRecord make_page(std::string id, PageSize size,
                            std::vector<std::pair<PixelBox, std::string>> paragraphs,
                            std::vector<std::pair<PixelBox, std::string>> lines = {},
                            Language lang = Language::en) {
  PageRecord p;
  p.page_id = std::move(id);
  p.image_ref = p.page_id + ".png";
  p.size = size;
  p.language = lang;
  for (auto& [box, text] : paragraphs) p.paragraphs.push_back({box, text, TextKind::paragraph});
  for (auto& [box, text] : lines) p.lines.push_back({box, text, TextKind::line});
  return p;
}

inline std::string random_words(std::mt19937_64& gen, int n) {
  static const char* kWords[] = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"};
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += kWords[std::uniform_int_distribution<int>(0, 7)(gen)];
  }
  return s;
}

// Random page of non-overlapping paragraphs laid out in up to three columns,
// each paragraph split into lines.
inline PageRecord random_page(std::mt19937_64& gen, const std::string& id) {
  const int cols = std::uniform_int_distribution<int>(1, 3)(gen);
  const double width = 1200;
  const double col_w = (width - 40) / cols;
  std::vector<std::pair<PixelBox, std::string>> paras;
  std::vector<std::pair<PixelBox, std::string>> lines;
  for (int c = 0; c < cols; ++c) {
    double y = 20 + std::uniform_int_distribution<int>(0, 30)(gen);
    const double x1 = 20 + c * col_w;
    while (y < 1400) {
      const int nlines = std::uniform_int_distribution<int>(1, 4)(gen);
      const double x2 = x1 + col_w - 20 - std::uniform_int_distribution<int>(0, 40)(gen);
      std::string text;
      for (int l = 0; l < nlines; ++l) {
        const std::string lt = random_words(gen, std::uniform_int_distribution<int>(2, 8)(gen));
        lines.push_back({PixelBox{x1, y + l * 20, x2, y + l * 20 + 16}, lt});
        text += (l ? " " : "") + lt;
      }
      paras.push_back({PixelBox{x1, y, x2, y + nlines * 20 - 4}, text});
      y += nlines * 20 + std::uniform_int_distribution<int>(10, 40)(gen);
    }
  }
  return make_page(id, {1200, 1500}, paras, lines);
}

/// A scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("docfocus-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace docfocus::testing
