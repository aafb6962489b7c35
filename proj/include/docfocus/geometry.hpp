// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace docfocus {

/// Side length of the normalized coordinate grid. Normalized values live in
/// [0, kNormScale].
inline constexpr int kNormScale = 1000;

struct PageSize {
  int width = 0;
  int height = 0;

  bool valid() const noexcept { return width >= 1 && height >= 1; }
  friend bool operator==(const PageSize&, const PageSize&) = default;
};

/// Axis-aligned box in pixel space, origin at the top-left corner.
struct PixelBox {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  double width() const noexcept { return x2 - x1; }
  double height() const noexcept { return y2 - y1; }
  double area() const noexcept { return width() * height(); }
  bool valid() const noexcept { return x1 >= 0 && y1 >= 0 && x1 < x2 && y1 < y2; }
  bool within(const PageSize& size) const noexcept {
    return x1 >= 0 && y1 >= 0 && x2 <= size.width && y2 <= size.height;
  }
  bool contains(const PixelBox& other) const noexcept {
    return x1 <= other.x1 && y1 <= other.y1 && x2 >= other.x2 && y2 >= other.y2;
  }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct NormPoint {
  int x = 0, y = 0;

  bool valid() const noexcept { return x >= 0 && x <= kNormScale && y >= 0 && y <= kNormScale; }
  friend bool operator==(const NormPoint&, const NormPoint&) = default;
};

struct NormBox {
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  bool valid() const noexcept {
    return x1 >= 0 && y1 >= 0 && x1 < x2 && y1 < y2 && x2 <= kNormScale && y2 <= kNormScale;
  }
  bool contains(const NormPoint& p) const noexcept {
    return p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2;
  }
  bool contains(const NormBox& b) const noexcept {
    return x1 <= b.x1 && y1 <= b.y1 && x2 >= b.x2 && y2 >= b.y2;
  }

  friend auto operator<=>(const NormBox&, const NormBox&) = default;
};

/// Rounds half away from zero for the non-negative values used here.
int round_half_up(double v) noexcept;

/// Maps a pixel box onto the integer [0,1000] grid. Coordinates that collapse
/// onto the same grid line are widened by one unit toward the in-range side.
/// Throws Error(out_of_bounds) if the box leaves the page.
NormBox normalize(const PixelBox& box, const PageSize& size);

NormPoint normalize(double x, double y, const PageSize& size);

PixelBox denormalize(const NormBox& box, const PageSize& size) noexcept;

double intersection_area(const PixelBox& a, const PixelBox& b) noexcept;

double iou(const PixelBox& a, const PixelBox& b) noexcept;

PixelBox union_box(const PixelBox& a, const PixelBox& b) noexcept;

/// Prompt point for a text line: two pixels in from the left edge at the
/// vertical center, normalized. Always inside normalize(line_box).
NormPoint line_anchor_point(const PixelBox& line_box, const PageSize& size);

/// "(x1,y1,x2,y2)"
std::string to_string(const NormBox& box);
/// "(x,y)"
std::string to_string(const NormPoint& point);

}  // namespace docfocus
