// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "docfocus/geometry.hpp"

namespace docfocus {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kWhite{255, 255, 255};

/// 8-bit RGB raster, row-major, no padding.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = kWhite);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  PageSize size() const noexcept { return {width_, height_}; }
  bool empty() const noexcept { return width_ == 0 || height_ == 0; }

  Rgb at(int x, int y) const noexcept {
    const std::size_t i = offset(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    const std::size_t i = offset(x, y);
    data_[i] = c[0];
    data_[i + 1] = c[1];
    data_[i + 2] = c[2];
  }

  const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

  /// Fills every pixel touched by the box (floor of the near edge to ceil of
  /// the far edge), clipped to the raster.
  void fill(const PixelBox& box, Rgb c);

  /// Copies src with its top-left corner at (x, y), clipped to the raster.
  void paste(const Image& src, int x, int y);

  /// Draws a frame of the given width just outside the box so the pixels the
  /// box covers stay untouched.
  void stroke_outside(const PixelBox& box, int width, Rgb c);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct PixelSpan {
  int x0, y0, x1, y1;  // half-open
};

/// Integer pixel rectangle covered by a box, clipped to the raster.
PixelSpan covered_pixels(const PixelBox& box, const PageSize& size) noexcept;

/// Bilinear resampling with pixel-center alignment, evaluated in fixed point
/// so results are bit-identical on every platform.
Image resize_bilinear(const Image& src, int width, int height);

Image read_png(const std::filesystem::path& path);
void write_png(const Image& image, const std::filesystem::path& path);

}  // namespace docfocus
