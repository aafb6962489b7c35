// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/democorpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <string_view>

#include <fmt/format.h>

#include "docfocus/corpus.hpp"
#include "docfocus/error.hpp"
#include "docfocus/image.hpp"
#include "docfocus/parallel.hpp"
#include "docfocus/rng.hpp"
#include "docfocus/unicode.hpp"

namespace docfocus {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 64> kWords = {
    "the",       "model",    "document", "page",     "text",     "region",   "vision",
    "encoder",   "language", "token",    "image",    "layout",   "table",    "figure",
    "section",   "results",  "method",   "training", "data",     "samples",  "between",
    "through",   "dense",    "reading",  "order",    "column",   "paragraph", "line",
    "character", "accuracy", "score",    "metric",   "benchmark", "natural", "caption",
    "prompt",    "position", "color",    "box",      "point",    "focus",    "foreground",
    "we",        "propose",  "a",        "new",      "approach", "for",      "and",
    "of",        "in",       "to",       "with",     "on",       "is",       "are",
    "this",      "that",     "each",     "which",    "from",     "by",       "multiple",
    "pages"};

constexpr std::array<std::string_view, 8> kZhPunct = {"，", "。", "、", "；", "：", "（", "）", "“"};

struct Glyphs {
  int cell;    // advance per scalar
  int height;  // line pitch
  int ink;     // bar height
};

constexpr Glyphs kLatin{4, 9, 6};
constexpr Glyphs kWide{8, 11, 8};

std::string zh_char(Rng& rng) {
  if (rng.uniform_int(0, 11) == 0) return std::string(kZhPunct[rng.index(kZhPunct.size())]);
  return unicode::encode(static_cast<char32_t>(0x4E00 + rng.uniform_int(0, 0x1FFF)));
}

// One "word" of the page's language plus whether it is wide script.
std::pair<std::string, bool> next_word(Language lang, Rng& rng) {
  const bool wide = lang == Language::zh || (lang == Language::mixed && rng.uniform_int(0, 2) == 0);
  if (!wide) return {std::string(kWords[rng.index(kWords.size())]), false};
  std::string w;
  const auto n = rng.uniform_int(2, 6);
  for (std::int64_t i = 0; i < n; ++i) w += zh_char(rng);
  return {w, true};
}

struct Column {
  int x1, x2;
};

struct PageDraft {
  PageRecord record;
  LayoutRecord layout;
  Image image;
};

constexpr Rgb kInk{40, 40, 40};

PageDraft draft_page(const std::string& id, Language lang, bool sparse, const DemoCorpusConfig& cfg,
                     Rng& rng) {
  PageDraft d;
  d.record.page_id = id;
  d.record.image_ref = "images/pages/" + id + ".png";
  d.record.size = {cfg.page_width, cfg.page_height};
  d.record.language = lang;
  d.layout.page_id = id;
  d.image = Image(cfg.page_width, cfg.page_height);

  const int margin = 40;
  const int bottom = cfg.page_height - margin;
  const Glyphs& g = lang == Language::zh ? kWide : kLatin;
  const int space = lang == Language::zh ? 0 : g.cell * 2;

  // Title line.
  int y = margin;
  {
    std::string title;
    int x = margin;
    const int n = static_cast<int>(rng.uniform_int(3, 6));
    for (int i = 0; i < n; ++i) {
      auto [w, wide] = next_word(lang, rng);
      const int width = static_cast<int>(unicode::length(w)) * (wide ? 12 : 7);
      d.image.fill(PixelBox{double(x), double(y), double(x + width), double(y + 14)}, kInk);
      if (!title.empty() && lang != Language::zh) title += ' ';
      title += w;
      x += width + (lang == Language::zh ? 0 : 8);
    }
    const PixelBox box{double(margin), double(y), double(x - (lang == Language::zh ? 0 : 8)),
                       double(y + 14)};
    d.record.paragraphs.push_back({box, title, TextKind::paragraph});
    d.record.lines.push_back({box, title, TextKind::line});
    d.layout.elements.push_back({"title", box});
    y += 30;
  }

  std::vector<Column> columns;
  if (rng.uniform_int(0, 2) == 0) {
    const int mid = cfg.page_width / 2;
    columns = {{margin, mid - 10}, {mid + 10, cfg.page_width - margin}};
  } else {
    columns = {{margin, cfg.page_width - margin}};
  }
  const int line_budget = sparse ? 12 : 1 << 20;
  int lines_used = 0;
  const int top = y;
  for (const Column& col : columns) {
    y = top;
    while (y + g.height <= bottom && lines_used < line_budget) {
      const int want = static_cast<int>(rng.uniform_int(2, 10));
      std::string para_text;
      PixelBox para{};
      bool any = false;
      for (int l = 0; l < want && y + g.height <= bottom && lines_used < line_budget; ++l) {
        std::string line_text;
        int x = col.x1;
        const bool last = l + 1 == want;
        const int limit = last ? col.x1 + (col.x2 - col.x1) * static_cast<int>(rng.uniform_int(4, 9)) / 10
                               : col.x2;
        while (true) {
          auto [w, wide] = next_word(lang, rng);
          const int width = static_cast<int>(unicode::length(w)) * (wide ? kWide.cell : kLatin.cell);
          if (x + width > limit) break;
          const int ink = wide ? kWide.ink : kLatin.ink;
          d.image.fill(PixelBox{double(x), double(y + 1), double(x + width), double(y + 1 + ink)}, kInk);
          if (!line_text.empty() && !(lang == Language::zh)) line_text += ' ';
          line_text += w;
          x += width + space;
        }
        if (line_text.empty()) break;
        const PixelBox lb{double(col.x1), double(y), double(x - space), double(y + g.height - 1)};
        d.record.lines.push_back({lb, line_text, TextKind::line});
        para = any ? union_box(para, lb) : lb;
        if (any) para_text += lang == Language::zh ? "" : " ";
        para_text += line_text;
        any = true;
        y += g.height;
        ++lines_used;
      }
      if (any) {
        d.record.paragraphs.push_back({para, para_text, TextKind::paragraph});
        d.layout.elements.push_back({"text", para});
      }
      y += g.height;
    }
  }
  return d;
}

constexpr std::array<std::pair<std::string_view, Rgb>, 6> kShapeColors = {{
    {"red", {200, 40, 40}},
    {"green", {40, 160, 60}},
    {"blue", {40, 70, 200}},
    {"yellow", {230, 200, 40}},
    {"purple", {130, 50, 160}},
    {"orange", {235, 130, 30}},
}};
constexpr std::array<std::string_view, 6> kObjects = {"square", "block", "tile", "panel", "badge", "card"};
constexpr std::array<std::string_view, 4> kScenes = {"sunset", "ocean", "meadow", "night sky"};

struct NaturalDraft {
  NaturalImageRecord record;
  Image image;
};

NaturalDraft draft_natural(const std::string& id, Rng& rng) {
  NaturalDraft d;
  const int w = static_cast<int>(rng.uniform_int(160, 480));
  const int h = static_cast<int>(rng.uniform_int(120, 400));
  d.record.image_id = id;
  d.record.image_ref = "images/naturals/" + id + ".png";
  d.record.size = {w, h};
  d.image = Image(w, h);
  Rgb a{static_cast<std::uint8_t>(rng.uniform_int(0, 255)), static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
        static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
  Rgb b{static_cast<std::uint8_t>(rng.uniform_int(0, 255)), static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
        static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int t = (x * 256 / w + y * 256 / h) / 2;
      Rgb c;
      for (int k = 0; k < 3; ++k) c[k] = static_cast<std::uint8_t>((a[k] * (256 - t) + b[k] * t) / 256);
      d.image.set(x, y, c);
    }
  }
  const auto scene = kScenes[rng.index(kScenes.size())];
  const auto& [cname, color] = kShapeColors[rng.index(kShapeColors.size())];
  const auto object = kObjects[rng.index(kObjects.size())];
  const int sw = static_cast<int>(rng.uniform_int(w / 6, w / 2));
  const int sh = static_cast<int>(rng.uniform_int(h / 6, h / 2));
  const int sx = static_cast<int>(rng.uniform_int(0, w - sw));
  const int sy = static_cast<int>(rng.uniform_int(0, h - sh));
  const PixelBox shape{double(sx), double(sy), double(sx + sw), double(sy + sh)};
  d.image.fill(shape, color);
  d.record.caption = fmt::format("a {} {} in front of a {} gradient", cname, object, scene);
  d.record.region_dialogs.push_back(
      {shape, fmt::format("What color is the {} in the region?", object), std::string(cname)});
  return d;
}

void write_lines(const fs::path& path, const std::vector<Json>& records) {
  std::ofstream out(path, std::ios::binary);
  for (const Json& j : records) out << j.dump() << '\n';
  if (!out) fail(ErrorCode::image_io, "cannot write " + path.string());
}

}  // namespace

DemoCorpusFiles write_demo_corpus(const DemoCorpusConfig& config, const fs::path& dir) {
  if (config.page_width < 200 || config.page_height < 200) {
    fail(ErrorCode::invalid_config, "demo pages must be at least 200x200");
  }
  fs::create_directories(dir / "images" / "pages");
  fs::create_directories(dir / "images" / "naturals");

  struct PagePlan {
    std::string id;
    Language lang;
    bool sparse;
  };
  std::vector<PagePlan> plans;
  auto add = [&](std::string_view prefix, Language lang, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool sparse = config.sparse_every > 0 && i % config.sparse_every == config.sparse_every - 1;
      plans.push_back({fmt::format("{}{:04d}", prefix, i), lang, sparse});
    }
  };
  add("en", Language::en, config.en_pages);
  add("zh", Language::zh, config.zh_pages);
  add("mx", Language::mixed, config.mixed_pages);

  std::vector<Json> pages(plans.size());
  std::vector<Json> layouts(plans.size());
  parallel_for(plans.size(), config.workers, [&](std::size_t i) {
    Rng rng(derive_seed(config.seed, "demo/page/" + plans[i].id));
    PageDraft d = draft_page(plans[i].id, plans[i].lang, plans[i].sparse, config, rng);
    write_png(d.image, dir / d.record.image_ref);
    pages[i] = to_json(d.record);
    layouts[i] = to_json(d.layout);
  });

  std::vector<Json> naturals(config.naturals);
  parallel_for(config.naturals, config.workers, [&](std::size_t i) {
    const std::string id = fmt::format("nat{:04d}", i);
    Rng rng(derive_seed(config.seed, "demo/natural/" + id));
    NaturalDraft d = draft_natural(id, rng);
    write_png(d.image, dir / d.record.image_ref);
    naturals[i] = to_json(d.record);
  });

  DemoCorpusFiles files{dir / "pages.jsonl", dir / "naturals.jsonl", dir / "layouts.jsonl"};
  write_lines(files.pages, pages);
  write_lines(files.naturals, naturals);
  write_lines(files.layouts, layouts);
  return files;
}

}  // namespace docfocus
