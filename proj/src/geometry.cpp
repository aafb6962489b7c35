// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "docfocus/error.hpp"

namespace docfocus {

namespace {

int to_grid(double v, int extent) {
  return std::clamp(round_half_up(v * kNormScale / extent), 0, kNormScale);
}

void widen(int& lo, int& hi) {
  if (lo < hi) return;
  if (hi < kNormScale) {
    hi = lo + 1;
  } else {
    lo = hi - 1;
  }
}

}  // namespace

int round_half_up(double v) noexcept { return static_cast<int>(std::floor(v + 0.5)); }

NormBox normalize(const PixelBox& box, const PageSize& size) {
  if (!size.valid()) fail(ErrorCode::invalid_argument, "page size must be positive");
  if (!box.valid()) {
    fail(ErrorCode::invalid_argument,
         fmt::format("invalid box ({},{},{},{})", box.x1, box.y1, box.x2, box.y2));
  }
  if (!box.within(size)) {
    fail(ErrorCode::out_of_bounds, fmt::format("box ({},{},{},{}) outside {}x{} page", box.x1,
                                               box.y1, box.x2, box.y2, size.width, size.height));
  }
  NormBox out{to_grid(box.x1, size.width), to_grid(box.y1, size.height),
              to_grid(box.x2, size.width), to_grid(box.y2, size.height)};
  widen(out.x1, out.x2);
  widen(out.y1, out.y2);
  return out;
}

NormPoint normalize(double x, double y, const PageSize& size) {
  if (x < 0 || y < 0 || x > size.width || y > size.height) {
    fail(ErrorCode::out_of_bounds, fmt::format("point ({},{}) outside page", x, y));
  }
  return {to_grid(x, size.width), to_grid(y, size.height)};
}

PixelBox denormalize(const NormBox& box, const PageSize& size) noexcept {
  const double w = size.width;
  const double h = size.height;
  return {box.x1 * w / kNormScale, box.y1 * h / kNormScale, box.x2 * w / kNormScale,
          box.y2 * h / kNormScale};
}

double intersection_area(const PixelBox& a, const PixelBox& b) noexcept {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0) return 0.0;
  return w * h;
}

double iou(const PixelBox& a, const PixelBox& b) noexcept {
  const double inter = intersection_area(a, b);
  if (inter <= 0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

PixelBox union_box(const PixelBox& a, const PixelBox& b) noexcept {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2),
          std::max(a.y2, b.y2)};
}

NormPoint line_anchor_point(const PixelBox& line_box, const PageSize& size) {
  const NormBox norm = normalize(line_box, size);
  const double px = std::min(line_box.x1 + 2.0, line_box.x2);
  const double py = (line_box.y1 + line_box.y2) / 2.0;
  NormPoint p = normalize(px, py, size);
  p.x = std::clamp(p.x, norm.x1, norm.x2);
  p.y = std::clamp(p.y, norm.y1, norm.y2);
  return p;
}

std::string to_string(const NormBox& box) {
  return fmt::format("({},{},{},{})", box.x1, box.y1, box.x2, box.y2);
}

std::string to_string(const NormPoint& point) { return fmt::format("({},{})", point.x, point.y); }

}  // namespace docfocus
