// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <png.h>

#include "docfocus/error.hpp"

namespace docfocus {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) fail(ErrorCode::invalid_argument, "negative image size");
  data_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill[0];
    data_[i + 1] = fill[1];
    data_[i + 2] = fill[2];
  }
}

PixelSpan covered_pixels(const PixelBox& box, const PageSize& size) noexcept {
  PixelSpan s{static_cast<int>(std::floor(box.x1)), static_cast<int>(std::floor(box.y1)),
              static_cast<int>(std::ceil(box.x2)), static_cast<int>(std::ceil(box.y2))};
  s.x0 = std::clamp(s.x0, 0, size.width);
  s.y0 = std::clamp(s.y0, 0, size.height);
  s.x1 = std::clamp(s.x1, 0, size.width);
  s.y1 = std::clamp(s.y1, 0, size.height);
  return s;
}

void Image::fill(const PixelBox& box, Rgb c) {
  const PixelSpan s = covered_pixels(box, size());
  for (int y = s.y0; y < s.y1; ++y) {
    for (int x = s.x0; x < s.x1; ++x) set(x, y, c);
  }
}

void Image::paste(const Image& src, int x, int y) {
  const int x0 = std::max(0, x);
  const int y0 = std::max(0, y);
  const int x1 = std::min(width_, x + src.width());
  const int y1 = std::min(height_, y + src.height());
  for (int yy = y0; yy < y1; ++yy) {
    const std::size_t n = static_cast<std::size_t>(x1 - x0) * 3;
    if (x1 <= x0) break;
    std::memcpy(&data_[offset(x0, yy)], &src.data_[src.offset(x0 - x, yy - y)], n);
  }
}

void Image::stroke_outside(const PixelBox& box, int width, Rgb c) {
  const PixelSpan inner = covered_pixels(box, size());
  const int ox0 = std::max(0, inner.x0 - width);
  const int oy0 = std::max(0, inner.y0 - width);
  const int ox1 = std::min(width_, inner.x1 + width);
  const int oy1 = std::min(height_, inner.y1 + width);
  for (int y = oy0; y < oy1; ++y) {
    for (int x = ox0; x < ox1; ++x) {
      const bool inside = x >= inner.x0 && x < inner.x1 && y >= inner.y0 && y < inner.y1;
      if (!inside) set(x, y, c);
    }
  }
}

namespace {

constexpr std::int64_t kFixedOne = 2048;

struct Tap {
  int lo, hi;
  std::int64_t frac;
};

// Source sample positions for each destination index:
// src = (dst + 0.5) * src_len / dst_len - 0.5, clamped to the valid range.
std::vector<Tap> taps(int src_len, int dst_len) {
  std::vector<Tap> out(static_cast<std::size_t>(dst_len));
  for (int d = 0; d < dst_len; ++d) {
    const std::int64_t num = (2 * static_cast<std::int64_t>(d) + 1) * src_len * kFixedOne;
    std::int64_t pos = num / (2 * static_cast<std::int64_t>(dst_len)) - kFixedOne / 2;
    pos = std::clamp<std::int64_t>(pos, 0, static_cast<std::int64_t>(src_len - 1) * kFixedOne);
    const int lo = static_cast<int>(pos / kFixedOne);
    out[static_cast<std::size_t>(d)] = {lo, std::min(lo + 1, src_len - 1), pos % kFixedOne};
  }
  return out;
}

}  // namespace

Image resize_bilinear(const Image& src, int width, int height) {
  if (src.empty() || width < 1 || height < 1) {
    fail(ErrorCode::invalid_argument, "resize_bilinear: empty source or target");
  }
  const std::vector<Tap> xs = taps(src.width(), width);
  const std::vector<Tap> ys = taps(src.height(), height);
  Image out(width, height);
  constexpr std::int64_t kDenom = kFixedOne * kFixedOne;
  for (int y = 0; y < height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const Rgb p00 = src.at(tx.lo, ty.lo);
      const Rgb p10 = src.at(tx.hi, ty.lo);
      const Rgb p01 = src.at(tx.lo, ty.hi);
      const Rgb p11 = src.at(tx.hi, ty.hi);
      const std::int64_t w00 = (kFixedOne - tx.frac) * (kFixedOne - ty.frac);
      const std::int64_t w10 = tx.frac * (kFixedOne - ty.frac);
      const std::int64_t w01 = (kFixedOne - tx.frac) * ty.frac;
      const std::int64_t w11 = tx.frac * ty.frac;
      Rgb c{};
      for (int k = 0; k < 3; ++k) {
        const std::int64_t v = p00[k] * w00 + p10[k] * w10 + p01[k] * w01 + p11[k] * w11;
        c[k] = static_cast<std::uint8_t>((v + kDenom / 2) / kDenom);
      }
      out.set(x, y, c);
    }
  }
  return out;
}

Image read_png(const std::filesystem::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    fail(ErrorCode::image_io, "cannot decode " + path.string() + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  Image out(static_cast<int>(img.width), static_cast<int>(img.height));
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&img);
    fail(ErrorCode::image_io, "cannot decode " + path.string() + ": " + img.message);
  }
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
      out.set(x, y, {buf[i], buf[i + 1], buf[i + 2]});
    }
  }
  return out;
}

void write_png(const Image& image, const std::filesystem::path& path) {
  if (image.empty()) fail(ErrorCode::image_io, "refusing to write empty image");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, image.bytes().data(), 0, nullptr)) {
    fail(ErrorCode::image_io, "cannot write " + path.string() + ": " + img.message);
  }
}

}  // namespace docfocus
