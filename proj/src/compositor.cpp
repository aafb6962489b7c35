// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/compositor.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "docfocus/error.hpp"

namespace docfocus {

void ScaleParams::validate() const {
  const bool ok = 0 < alpha && alpha < beta && beta <= 1 && 0 < eta && eta < gamma && gamma <= 1;
  if (!ok) {
    fail(ErrorCode::invalid_config,
         fmt::format("scale ratios must satisfy 0<alpha<beta<=1 and 0<eta<gamma<=1 "
                     "(got {}, {}, {}, {})",
                     alpha, beta, eta, gamma));
  }
}

namespace {

// floor(ratio * extent) with a small guard against products like
// 0.3 * 1000 landing a hair below the integer.
int floor_fraction(double ratio, int extent) {
  return static_cast<int>(std::floor(ratio * extent + 1e-9));
}

bool spans_overlap(const PixelSpan& a, const PixelSpan& b) noexcept {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

ScaleBounds scale_bounds(const PageSize& natural, const PageSize& page, const ScaleParams& params) {
  if (!natural.valid() || !page.valid()) {
    fail(ErrorCode::invalid_argument, "scale_figure: sizes must be positive");
  }
  // W_n / H_n > W_d / H_d, compared without division.
  const bool wider = static_cast<long long>(natural.width) * page.height >
                     static_cast<long long>(page.width) * natural.height;
  if (wider) {
    return {ScaleAxis::width, floor_fraction(params.alpha, page.width),
            floor_fraction(params.beta, page.width)};
  }
  return {ScaleAxis::height, floor_fraction(params.eta, page.height),
          floor_fraction(params.gamma, page.height)};
}

PageSize scaled_size_for(const PageSize& natural, ScaleAxis axis, int drawn) {
  const long long d = drawn;
  if (axis == ScaleAxis::width) {
    return {drawn, static_cast<int>(d * natural.height / natural.width)};
  }
  return {static_cast<int>(d * natural.width / natural.height), drawn};
}

PageSize scale_figure(const PageSize& natural, const PageSize& page, Rng& rng,
                      const ScaleParams& params) {
  const ScaleBounds bounds = scale_bounds(natural, page, params);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto drawn = static_cast<int>(rng.uniform_int(bounds.lo, bounds.hi));
    const PageSize s = scaled_size_for(natural, bounds.axis, drawn);
    if (s.width >= 1 && s.height >= 1) return s;
  }
  fail(ErrorCode::placement_infeasible,
       fmt::format("figure {}x{} cannot be scaled onto a {}x{} page", natural.width,
                   natural.height, page.width, page.height));
}

Placement place_figure(const PageRecord& page, const NaturalImageRecord& natural, Rng& rng,
                       const ScaleParams& params) {
  const PageSize scaled = scale_figure(natural.size, page.size, rng, params);
  if (scaled.width > page.size.width || scaled.height > page.size.height) {
    fail(ErrorCode::placement_infeasible, "scaled figure larger than page " + page.page_id);
  }
  const auto x = rng.uniform_int(0, page.size.width - scaled.width);
  const auto y = rng.uniform_int(0, page.size.height - scaled.height);
  const PixelBox target{static_cast<double>(x), static_cast<double>(y),
                        static_cast<double>(x + scaled.width),
                        static_cast<double>(y + scaled.height)};

  Placement out;
  out.placement = {natural, scaled, target, natural.caption};
  std::vector<TextBox> kept;
  for (const TextBox& box : page.all_boxes()) {
    if (intersection_area(box.box, target) > 0) {
      out.removed.push_back(box);
    } else {
      kept.push_back(box);
    }
  }
  std::vector<PixelSpan> filled;
  filled.reserve(out.removed.size());
  for (const TextBox& r : out.removed) filled.push_back(covered_pixels(r.box, page.size));
  for (TextBox& box : kept) {
    const PixelSpan span = covered_pixels(box.box, page.size);
    const bool touched = std::any_of(filled.begin(), filled.end(),
                                     [&](const PixelSpan& f) { return spans_overlap(span, f); });
    if (!touched) out.surviving.push_back(std::move(box));
  }
  return out;
}

Image render_interleaved(const Image& page_image, const Image& natural_image,
                         const FigurePlacement& placement, const std::vector<TextBox>& removed) {
  Image out = page_image;
  for (const TextBox& r : removed) out.fill(r.box, kWhite);
  const Image figure =
      resize_bilinear(natural_image, placement.scaled_size.width, placement.scaled_size.height);
  out.paste(figure, static_cast<int>(placement.target.x1), static_cast<int>(placement.target.y1));
  return out;
}

std::string_view to_string(MarkColor color) noexcept {
  switch (color) {
    case MarkColor::red: return "red";
    case MarkColor::green: return "green";
    case MarkColor::blue: return "blue";
  }
  return "red";
}

MarkColor parse_mark_color(std::string_view s) {
  if (s == "red") return MarkColor::red;
  if (s == "green") return MarkColor::green;
  if (s == "blue") return MarkColor::blue;
  fail(ErrorCode::schema_violation, fmt::format("unknown mark color '{}'", s));
}

Rgb rgb(MarkColor color) noexcept {
  switch (color) {
    case MarkColor::red: return {255, 0, 0};
    case MarkColor::green: return {0, 255, 0};
    case MarkColor::blue: return {0, 0, 255};
  }
  return {0, 0, 0};
}

std::vector<ColorMark> select_color_marks(const std::vector<TextBox>& boxes, Rng& rng) {
  std::vector<const TextBox*> candidates;
  for (const TextBox& b : boxes) {
    if (char_count(b.content) >= kMinMarkChars) candidates.push_back(&b);
  }
  if (candidates.size() < 3) {
    fail(ErrorCode::color_hybrid_infeasible,
         fmt::format("only {} boxes with >= {} characters", candidates.size(), kMinMarkChars));
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::vector<std::size_t> pick = rng.sample_indices(candidates.size(), 3);
    const PixelBox& a = candidates[pick[0]]->box;
    const PixelBox& b = candidates[pick[1]]->box;
    const PixelBox& c = candidates[pick[2]]->box;
    if (intersection_area(a, b) > 0 || intersection_area(a, c) > 0 ||
        intersection_area(b, c) > 0) {
      continue;
    }
    std::vector<ColorMark> marks;
    for (std::size_t k = 0; k < 3; ++k) {
      const TextBox* tb = candidates[pick[k]];
      marks.push_back({kMarkColors[k], tb->box, tb->content});
    }
    return marks;
  }
  fail(ErrorCode::color_hybrid_infeasible, "no pairwise-disjoint triple after 100 draws");
}

int stroke_width(const PageSize& page) noexcept {
  return std::max(2, static_cast<int>(std::floor(0.003 * page.width)));
}

void paint_color_marks(Image& image, const std::vector<ColorMark>& marks) {
  const int w = stroke_width(image.size());
  for (const ColorMark& m : marks) image.stroke_outside(m.box, w, rgb(m.color));
}

ColorPaint paint_color_boxes(const PageRecord& page, const Image& page_image, Rng& rng) {
  ColorPaint out;
  out.marks = select_color_marks(page.all_boxes(), rng);
  out.image = page_image;
  paint_color_marks(out.image, out.marks);
  return out;
}

HybridResult synthesize_hybrid(const PageRecord& page, const Image& page_image,
                               const NaturalImageRecord* natural, const Image* natural_image,
                               bool color_marks, Rng& rng, const ScaleParams& params) {
  if (page_image.size() != page.size) {
    fail(ErrorCode::image_io,
         fmt::format("raster of {} is {}x{}, record says {}x{}", page.page_id, page_image.width(),
                     page_image.height(), page.size.width, page.size.height));
  }
  HybridResult out;
  out.page.base = page;
  out.page.surviving_boxes = page.all_boxes();
  out.image = page_image;
  if (natural != nullptr && natural_image != nullptr) {
    if (natural_image->size() != natural->size) {
      fail(ErrorCode::image_io, "natural raster size mismatch for " + natural->image_id);
    }
    Placement placed = place_figure(page, *natural, rng, params);
    out.image = render_interleaved(out.image, *natural_image, placed.placement, placed.removed);
    out.page.placements.push_back(std::move(placed.placement));
    out.page.surviving_boxes = std::move(placed.surviving);
  }
  if (color_marks) {
    out.page.color_marks = select_color_marks(out.page.surviving_boxes, rng);
    paint_color_marks(out.image, out.page.color_marks);
  }
  return out;
}

Json to_json(const HybridPage& hybrid) {
  Json placements = Json::array();
  for (const FigurePlacement& p : hybrid.placements) {
    placements.push_back({{"image_id", p.natural.image_id},
                          {"caption", p.caption},
                          {"natural_width", p.natural.size.width},
                          {"natural_height", p.natural.size.height},
                          {"scaled_width", p.scaled_size.width},
                          {"scaled_height", p.scaled_size.height},
                          {"target", bbox_to_json(p.target)}});
  }
  Json marks = Json::array();
  for (const ColorMark& m : hybrid.color_marks) {
    marks.push_back(
        {{"color", std::string(to_string(m.color))}, {"bbox", bbox_to_json(m.box)}, {"text", m.content}});
  }
  Json paragraphs = Json::array();
  Json lines = Json::array();
  for (const TextBox& b : hybrid.surviving_boxes) {
    Json entry{{"bbox", bbox_to_json(b.box)}, {"text", b.content}};
    (b.kind == TextKind::paragraph ? paragraphs : lines).push_back(std::move(entry));
  }
  return {{"page_id", hybrid.base.page_id},
          {"image", hybrid.composited_image_ref},
          {"width", hybrid.base.size.width},
          {"height", hybrid.base.size.height},
          {"placements", placements},
          {"color_marks", marks},
          {"surviving", {{"paragraphs", paragraphs}, {"lines", lines}}}};
}

HybridPage hybrid_from_json(const Json& j, const Corpus& corpus) {
  try {
    HybridPage h;
    h.base = corpus.page(j.at("page_id").get<std::string>());
    h.composited_image_ref = j.at("image").get<std::string>();
    for (const Json& p : j.at("placements")) {
      const std::string id = p.at("image_id").get<std::string>();
      const NaturalImageRecord* natural = corpus.find_natural(id);
      if (natural == nullptr) fail(ErrorCode::not_found, "unknown natural image " + id);
      FigurePlacement fp;
      fp.natural = *natural;
      fp.caption = p.at("caption").get<std::string>();
      fp.scaled_size = {p.at("scaled_width").get<int>(), p.at("scaled_height").get<int>()};
      fp.target = bbox_from_json(p.at("target"));
      h.placements.push_back(std::move(fp));
    }
    for (const Json& m : j.at("color_marks")) {
      h.color_marks.push_back({parse_mark_color(m.at("color").get<std::string>()),
                               bbox_from_json(m.at("bbox")), m.at("text").get<std::string>()});
    }
    const Json& surv = j.at("surviving");
    for (const char* key : {"paragraphs", "lines"}) {
      const TextKind kind = std::string_view(key) == "paragraphs" ? TextKind::paragraph : TextKind::line;
      for (const Json& b : surv.at(key)) {
        h.surviving_boxes.push_back({bbox_from_json(b.at("bbox")), b.at("text").get<std::string>(), kind});
      }
    }
    return h;
  } catch (const Json::exception& e) {
    fail(ErrorCode::schema_violation, std::string("hybrid sidecar: ") + e.what());
  }
}

}  // namespace docfocus
