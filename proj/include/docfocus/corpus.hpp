// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "docfocus/geometry.hpp"

namespace docfocus {

using Json = nlohmann::json;

enum class TextKind { paragraph, line };
enum class Language { en, zh, mixed };

std::string_view to_string(Language lang) noexcept;
Language parse_language(std::string_view s);

struct TextBox {
  PixelBox box;
  std::string content;
  TextKind kind = TextKind::paragraph;

  friend bool operator==(const TextBox&, const TextBox&) = default;
};

struct PageRecord {
  std::string page_id;
  std::string image_ref;  // as written in the record
  PageSize size;
  std::vector<TextBox> paragraphs;
  std::vector<TextBox> lines;
  Language language = Language::en;
  std::filesystem::path source_dir;  // resolves a relative image_ref; not serialized

  std::filesystem::path image_path() const { return source_dir / image_ref; }
  /// Paragraphs followed by lines.
  std::vector<TextBox> all_boxes() const;

  friend bool operator==(const PageRecord& a, const PageRecord& b) {
    return a.page_id == b.page_id && a.image_ref == b.image_ref && a.size == b.size &&
           a.paragraphs == b.paragraphs && a.lines == b.lines && a.language == b.language;
  }
};

struct RegionDialog {
  PixelBox box;
  std::string question;
  std::string answer;

  friend bool operator==(const RegionDialog&, const RegionDialog&) = default;
};

struct NaturalImageRecord {
  std::string image_id;
  std::string image_ref;
  PageSize size;
  std::string caption;
  std::vector<RegionDialog> region_dialogs;
  std::filesystem::path source_dir;

  std::filesystem::path image_path() const { return source_dir / image_ref; }

  friend bool operator==(const NaturalImageRecord& a, const NaturalImageRecord& b) {
    return a.image_id == b.image_id && a.image_ref == b.image_ref && a.size == b.size &&
           a.caption == b.caption && a.region_dialogs == b.region_dialogs;
  }
};

struct LayoutElement {
  std::string label;
  PixelBox box;

  friend bool operator==(const LayoutElement&, const LayoutElement&) = default;
};

struct LayoutRecord {
  std::string page_id;
  std::vector<LayoutElement> elements;

  friend bool operator==(const LayoutRecord&, const LayoutRecord&) = default;
};

struct IngestOptions {
  std::filesystem::path base_dir;
  bool require_image = true;
  /// Boxes overhanging the page by at most this many pixels are clamped.
  double overhang_tolerance = 2.0;
};

PageRecord ingest_page(const Json& blob, const IngestOptions& options = {});
NaturalImageRecord ingest_natural(const Json& blob, const IngestOptions& options = {});
LayoutRecord ingest_layout(const Json& blob);

Json to_json(const PageRecord& page);
Json to_json(const NaturalImageRecord& natural);
Json to_json(const LayoutRecord& layout);
Json bbox_to_json(const PixelBox& box);
PixelBox bbox_from_json(const Json& j);

/// Merges word boxes whose vertical overlap is at least half the shorter
/// height (transitively) into lines, left-to-right, space-joined. Output is
/// sorted by (y1, x1).
std::vector<TextBox> group_words_into_lines(const std::vector<TextBox>& words);

/// Non-whitespace scalar count.
std::size_t char_count(std::string_view text);

/// Reads a .json file (one object or an array) or a .jsonl file.
std::vector<Json> read_records(const std::filesystem::path& path);

struct RejectedRecord {
  std::string source;
  std::string reason;
};

/// Page, natural-image and layout records indexed by id. Insertion takes an
/// exclusive lock; lookups take a shared one.
class Corpus {
 public:
  Corpus() = default;
  Corpus(const Corpus& other);
  Corpus& operator=(const Corpus& other);

  void add_page(PageRecord page);
  void add_natural(NaturalImageRecord natural);
  /// Requires the page to be present; boxes are checked against its size.
  void add_layout(LayoutRecord layout);

  const PageRecord& page(const std::string& page_id) const;
  const PageRecord* find_page(const std::string& page_id) const;
  const LayoutRecord* find_layout(const std::string& page_id) const;
  const NaturalImageRecord* find_natural(const std::string& image_id) const;

  /// In insertion order.
  const std::vector<PageRecord>& pages() const noexcept { return pages_; }
  const std::vector<NaturalImageRecord>& naturals() const noexcept { return naturals_; }
  const std::vector<LayoutRecord>& layouts() const noexcept { return layouts_; }

  /// Ingests every record in the file; invalid records are returned rather
  /// than thrown so a large corpus survives a few bad pages.
  std::vector<RejectedRecord> load_pages(const std::filesystem::path& path,
                                         bool require_image = true);
  std::vector<RejectedRecord> load_naturals(const std::filesystem::path& path,
                                            bool require_image = true);
  std::vector<RejectedRecord> load_layouts(const std::filesystem::path& path);

 private:
  mutable std::shared_mutex mutex_;
  std::vector<PageRecord> pages_;
  std::vector<NaturalImageRecord> naturals_;
  std::vector<LayoutRecord> layouts_;
  std::map<std::string, std::size_t, std::less<>> page_index_;
  std::map<std::string, std::size_t, std::less<>> natural_index_;
  std::map<std::string, std::size_t, std::less<>> layout_index_;
};

}  // namespace docfocus
