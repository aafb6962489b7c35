// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>

#include <fmt/format.h>

#include "docfocus/error.hpp"
#include "docfocus/unicode.hpp"

namespace docfocus {

namespace fs = std::filesystem;

std::string_view to_string(Language lang) noexcept {
  switch (lang) {
    case Language::en: return "en";
    case Language::zh: return "zh";
    case Language::mixed: return "mixed";
  }
  return "en";
}

Language parse_language(std::string_view s) {
  if (s == "en") return Language::en;
  if (s == "zh") return Language::zh;
  if (s == "mixed") return Language::mixed;
  fail(ErrorCode::schema_violation, fmt::format("unknown language '{}'", s));
}

std::vector<TextBox> PageRecord::all_boxes() const {
  std::vector<TextBox> out = paragraphs;
  out.insert(out.end(), lines.begin(), lines.end());
  return out;
}

namespace {

const Json& require(const Json& blob, const char* key, Json::value_t type) {
  auto it = blob.find(key);
  if (it == blob.end()) fail(ErrorCode::schema_violation, fmt::format("missing field '{}'", key));
  const bool number_ok = type == Json::value_t::number_integer && it->is_number_integer();
  if (!number_ok && it->type() != type) {
    fail(ErrorCode::schema_violation, fmt::format("field '{}' has the wrong type", key));
  }
  return *it;
}

std::string require_string(const Json& blob, const char* key) {
  return require(blob, key, Json::value_t::string).get<std::string>();
}

PageSize require_size(const Json& blob) {
  const auto w = require(blob, "width", Json::value_t::number_integer).get<long long>();
  const auto h = require(blob, "height", Json::value_t::number_integer).get<long long>();
  if (w < 1 || h < 1 || w > (1 << 20) || h > (1 << 20)) {
    fail(ErrorCode::schema_violation, fmt::format("bad page size {}x{}", w, h));
  }
  return {static_cast<int>(w), static_cast<int>(h)};
}

double clamp_coord(double v, double extent, double tolerance) {
  if (v < -tolerance || v > extent + tolerance) {
    fail(ErrorCode::out_of_bounds,
         fmt::format("coordinate {} overhangs [0,{}] by more than {} px", v, extent, tolerance));
  }
  return std::clamp(v, 0.0, extent);
}

PixelBox checked_box(const Json& j, const PageSize& size, double tolerance) {
  PixelBox b = bbox_from_json(j);
  b.x1 = clamp_coord(b.x1, size.width, tolerance);
  b.x2 = clamp_coord(b.x2, size.width, tolerance);
  b.y1 = clamp_coord(b.y1, size.height, tolerance);
  b.y2 = clamp_coord(b.y2, size.height, tolerance);
  if (!b.valid()) fail(ErrorCode::schema_violation, "box collapses after clamping");
  return b;
}

std::vector<TextBox> read_text_boxes(const Json& blob, const char* key, TextKind kind,
                                     const PageSize& size, double tolerance) {
  std::vector<TextBox> out;
  auto it = blob.find(key);
  if (it == blob.end()) return out;
  if (!it->is_array()) fail(ErrorCode::schema_violation, fmt::format("'{}' must be an array", key));
  for (const Json& item : *it) {
    if (!item.is_object()) fail(ErrorCode::schema_violation, "text box must be an object");
    TextBox tb;
    tb.kind = kind;
    tb.box = checked_box(require(item, "bbox", Json::value_t::array), size, tolerance);
    tb.content = require_string(item, "text");
    if (unicode::trim(tb.content).empty()) {
      fail(ErrorCode::empty_content, fmt::format("empty text in '{}'", key));
    }
    out.push_back(std::move(tb));
  }
  return out;
}

void check_image(const fs::path& path, bool required) {
  if (required && !fs::is_regular_file(path)) {
    fail(ErrorCode::not_found, "image file missing: " + path.string());
  }
}

Json number(double v) {
  double ip = 0;
  if (std::modf(v, &ip) == 0.0 && std::fabs(v) < 9e15) return Json(static_cast<long long>(v));
  return Json(v);
}

Json text_boxes_json(const std::vector<TextBox>& boxes) {
  Json arr = Json::array();
  for (const TextBox& b : boxes) arr.push_back({{"bbox", bbox_to_json(b.box)}, {"text", b.content}});
  return arr;
}

}  // namespace

PixelBox bbox_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) fail(ErrorCode::schema_violation, "bbox must have 4 numbers");
  for (const Json& v : j) {
    if (!v.is_number()) fail(ErrorCode::schema_violation, "bbox entries must be numbers");
  }
  PixelBox b{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  if (!(b.x1 < b.x2) || !(b.y1 < b.y2)) {
    fail(ErrorCode::schema_violation,
         fmt::format("bbox [{},{},{},{}] is not ordered", b.x1, b.y1, b.x2, b.y2));
  }
  return b;
}

Json bbox_to_json(const PixelBox& box) {
  return Json::array({number(box.x1), number(box.y1), number(box.x2), number(box.y2)});
}

PageRecord ingest_page(const Json& blob, const IngestOptions& options) {
  if (!blob.is_object()) fail(ErrorCode::schema_violation, "page record must be an object");
  PageRecord page;
  page.page_id = require_string(blob, "page_id");
  if (page.page_id.empty()) fail(ErrorCode::schema_violation, "empty page_id");
  page.image_ref = require_string(blob, "image");
  page.size = require_size(blob);
  page.language = parse_language(require_string(blob, "language"));
  page.source_dir = options.base_dir;
  page.paragraphs = read_text_boxes(blob, "paragraphs", TextKind::paragraph, page.size,
                                    options.overhang_tolerance);
  page.lines =
      read_text_boxes(blob, "lines", TextKind::line, page.size, options.overhang_tolerance);
  check_image(page.image_path(), options.require_image);
  return page;
}

NaturalImageRecord ingest_natural(const Json& blob, const IngestOptions& options) {
  if (!blob.is_object()) fail(ErrorCode::schema_violation, "natural record must be an object");
  NaturalImageRecord rec;
  rec.image_id = require_string(blob, "image_id");
  rec.image_ref = require_string(blob, "image");
  rec.size = require_size(blob);
  rec.caption = require_string(blob, "caption");
  if (unicode::trim(rec.caption).empty()) fail(ErrorCode::empty_content, "empty caption");
  rec.source_dir = options.base_dir;
  if (auto it = blob.find("region_dialogs"); it != blob.end() && !it->is_null()) {
    if (!it->is_array()) fail(ErrorCode::schema_violation, "region_dialogs must be an array");
    for (const Json& d : *it) {
      RegionDialog dialog;
      dialog.box = checked_box(require(d, "bbox", Json::value_t::array), rec.size,
                               options.overhang_tolerance);
      dialog.question = require_string(d, "q");
      dialog.answer = require_string(d, "a");
      if (unicode::trim(dialog.question).empty() || unicode::trim(dialog.answer).empty()) {
        fail(ErrorCode::empty_content, "empty region dialog");
      }
      rec.region_dialogs.push_back(std::move(dialog));
    }
  }
  check_image(rec.image_path(), options.require_image);
  return rec;
}

LayoutRecord ingest_layout(const Json& blob) {
  if (!blob.is_object()) fail(ErrorCode::schema_violation, "layout record must be an object");
  LayoutRecord rec;
  rec.page_id = require_string(blob, "page_id");
  for (const Json& e : require(blob, "elements", Json::value_t::array)) {
    LayoutElement el;
    el.label = require_string(e, "label");
    if (el.label.empty()) fail(ErrorCode::empty_content, "empty layout label");
    el.box = bbox_from_json(require(e, "bbox", Json::value_t::array));
    if (!el.box.valid()) fail(ErrorCode::schema_violation, "negative layout coordinate");
    rec.elements.push_back(std::move(el));
  }
  return rec;
}

Json to_json(const PageRecord& page) {
  return {{"page_id", page.page_id},
          {"image", page.image_ref},
          {"width", page.size.width},
          {"height", page.size.height},
          {"language", std::string(to_string(page.language))},
          {"paragraphs", text_boxes_json(page.paragraphs)},
          {"lines", text_boxes_json(page.lines)}};
}

Json to_json(const NaturalImageRecord& natural) {
  Json dialogs = Json::array();
  for (const RegionDialog& d : natural.region_dialogs) {
    dialogs.push_back({{"bbox", bbox_to_json(d.box)}, {"q", d.question}, {"a", d.answer}});
  }
  return {{"image_id", natural.image_id},
          {"image", natural.image_ref},
          {"width", natural.size.width},
          {"height", natural.size.height},
          {"caption", natural.caption},
          {"region_dialogs", dialogs}};
}

Json to_json(const LayoutRecord& layout) {
  Json elements = Json::array();
  for (const LayoutElement& e : layout.elements) {
    elements.push_back({{"label", e.label}, {"bbox", bbox_to_json(e.box)}});
  }
  return {{"page_id", layout.page_id}, {"elements", elements}};
}

std::vector<TextBox> group_words_into_lines(const std::vector<TextBox>& words) {
  const std::size_t n = words.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const PixelBox& a = words[i].box;
      const PixelBox& b = words[j].box;
      const double overlap = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
      const double shorter = std::min(a.height(), b.height());
      if (overlap > 0 && overlap >= 0.5 * shorter) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<TextBox> lines;
  lines.reserve(groups.size());
  for (auto& [root, members] : groups) {
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return words[a].box.x1 < words[b].box.x1;
    });
    TextBox line{words[members.front()].box, "", TextKind::line};
    for (std::size_t k = 0; k < members.size(); ++k) {
      const TextBox& w = words[members[k]];
      line.box = union_box(line.box, w.box);
      if (k > 0) line.content += ' ';
      line.content += w.content;
    }
    lines.push_back(std::move(line));
  }
  std::stable_sort(lines.begin(), lines.end(), [](const TextBox& a, const TextBox& b) {
    if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
    return a.box.x1 < b.box.x1;
  });
  return lines;
}

std::size_t char_count(std::string_view text) { return unicode::char_count(text); }

std::vector<Json> read_records(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::not_found, "cannot open " + path.string());
  std::vector<Json> out;
  if (path.extension() == ".jsonl") {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        out.push_back(Json::parse(line));
      } catch (const Json::parse_error& e) {
        fail(ErrorCode::schema_violation,
             fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
      }
    }
    return out;
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::schema_violation, fmt::format("{}: {}", path.string(), e.what()));
  }
  if (doc.is_array()) {
    for (Json& j : doc) out.push_back(std::move(j));
  } else {
    out.push_back(std::move(doc));
  }
  return out;
}

Corpus::Corpus(const Corpus& other) {
  std::shared_lock lock(other.mutex_);
  pages_ = other.pages_;
  naturals_ = other.naturals_;
  layouts_ = other.layouts_;
  page_index_ = other.page_index_;
  natural_index_ = other.natural_index_;
  layout_index_ = other.layout_index_;
}

Corpus& Corpus::operator=(const Corpus& other) {
  if (this == &other) return *this;
  Corpus copy(other);
  std::unique_lock lock(mutex_);
  pages_ = std::move(copy.pages_);
  naturals_ = std::move(copy.naturals_);
  layouts_ = std::move(copy.layouts_);
  page_index_ = std::move(copy.page_index_);
  natural_index_ = std::move(copy.natural_index_);
  layout_index_ = std::move(copy.layout_index_);
  return *this;
}

void Corpus::add_page(PageRecord page) {
  std::unique_lock lock(mutex_);
  if (page_index_.count(page.page_id) != 0) {
    fail(ErrorCode::duplicate_id, "duplicate page_id " + page.page_id);
  }
  page_index_.emplace(page.page_id, pages_.size());
  pages_.push_back(std::move(page));
}

void Corpus::add_natural(NaturalImageRecord natural) {
  std::unique_lock lock(mutex_);
  if (natural_index_.count(natural.image_id) != 0) {
    fail(ErrorCode::duplicate_id, "duplicate image_id " + natural.image_id);
  }
  natural_index_.emplace(natural.image_id, naturals_.size());
  naturals_.push_back(std::move(natural));
}

void Corpus::add_layout(LayoutRecord layout) {
  std::unique_lock lock(mutex_);
  auto page_it = page_index_.find(layout.page_id);
  if (page_it == page_index_.end()) fail(ErrorCode::not_found, "layout for unknown page " + layout.page_id);
  const PageSize size = pages_[page_it->second].size;
  for (const LayoutElement& e : layout.elements) {
    if (!e.box.within(size)) {
      fail(ErrorCode::out_of_bounds, fmt::format("layout element '{}' outside page", e.label));
    }
  }
  if (layout_index_.count(layout.page_id) != 0) {
    fail(ErrorCode::duplicate_id, "duplicate layout for page " + layout.page_id);
  }
  layout_index_.emplace(layout.page_id, layouts_.size());
  layouts_.push_back(std::move(layout));
}

const PageRecord& Corpus::page(const std::string& page_id) const {
  const PageRecord* p = find_page(page_id);
  if (p == nullptr) fail(ErrorCode::not_found, "unknown page_id " + page_id);
  return *p;
}

const PageRecord* Corpus::find_page(const std::string& page_id) const {
  std::shared_lock lock(mutex_);
  auto it = page_index_.find(page_id);
  return it == page_index_.end() ? nullptr : &pages_[it->second];
}

const LayoutRecord* Corpus::find_layout(const std::string& page_id) const {
  std::shared_lock lock(mutex_);
  auto it = layout_index_.find(page_id);
  return it == layout_index_.end() ? nullptr : &layouts_[it->second];
}

const NaturalImageRecord* Corpus::find_natural(const std::string& image_id) const {
  std::shared_lock lock(mutex_);
  auto it = natural_index_.find(image_id);
  return it == natural_index_.end() ? nullptr : &naturals_[it->second];
}

namespace {

template <typename Fn>
std::vector<RejectedRecord> load_each(const fs::path& path, Fn&& fn) {
  std::vector<RejectedRecord> rejected;
  const std::vector<Json> records = read_records(path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      fn(records[i]);
    } catch (const Error& e) {
      rejected.push_back({fmt::format("{}#{}", path.string(), i), e.what()});
    }
  }
  return rejected;
}

}  // namespace

std::vector<RejectedRecord> Corpus::load_pages(const fs::path& path, bool require_image) {
  IngestOptions opts{path.parent_path(), require_image};
  return load_each(path, [&](const Json& j) { add_page(ingest_page(j, opts)); });
}

std::vector<RejectedRecord> Corpus::load_naturals(const fs::path& path, bool require_image) {
  IngestOptions opts{path.parent_path(), require_image};
  return load_each(path, [&](const Json& j) { add_natural(ingest_natural(j, opts)); });
}

std::vector<RejectedRecord> Corpus::load_layouts(const fs::path& path) {
  return load_each(path, [&](const Json& j) { add_layout(ingest_layout(j)); });
}

}  // namespace docfocus
