// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "docfocus/digest.hpp"
#include "docfocus/error.hpp"
#include "docfocus/image.hpp"
#include "support.hpp"

using namespace docfocus;

namespace {

constexpr Rgb kBlack{0, 0, 0};

// Floating bilinear sample with pixel-center alignment and edge clamping.
double bilinear_oracle(const Image& src, int w, int h, int x, int y, int k) {
  auto coord = [](int o, int out_n, int in_n) {
    double c = (o + 0.5) * in_n / out_n - 0.5;
    return std::clamp(c, 0.0, double(in_n - 1));
  };
  const double cx = coord(x, w, src.width());
  const double cy = coord(y, h, src.height());
  const int x0 = int(std::floor(cx)), y0 = int(std::floor(cy));
  const int x1 = std::min(x0 + 1, src.width() - 1), y1 = std::min(y0 + 1, src.height() - 1);
  const double fx = cx - x0, fy = cy - y0;
  return src.at(x0, y0)[k] * (1 - fx) * (1 - fy) + src.at(x1, y0)[k] * fx * (1 - fy) +
         src.at(x0, y1)[k] * (1 - fx) * fy + src.at(x1, y1)[k] * fx * fy;
}

}  // namespace

TEST_CASE("fill covers floor to ceil") {
  Image img(10, 10);
  img.fill(PixelBox{1.5, 2.2, 3.1, 4.0}, kBlack);
  int black = 0;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      const bool expect = x >= 1 && x < 4 && y >= 2 && y < 4;
      black += img.at(x, y) == kBlack;
      CHECK((img.at(x, y) == kBlack) == expect);
    }
  }
  CHECK(black == 6);
  const PixelSpan s = covered_pixels(PixelBox{1.5, 2.2, 3.1, 4.0}, {10, 10});
  CHECK(s.x0 == 1);
  CHECK(s.x1 == 4);
  CHECK(s.y0 == 2);
  CHECK(s.y1 == 4);
}

TEST_CASE("paste clips at the border") {
  Image dst(4, 4);
  Image src(3, 3, kBlack);
  dst.paste(src, 2, 2);
  CHECK(dst.at(3, 3) == kBlack);
  CHECK(dst.at(2, 2) == kBlack);
  CHECK(dst.at(1, 1) == kWhite);
}

TEST_CASE("stroke_outside leaves the box interior untouched") {
  Image img(20, 20);
  img.fill(PixelBox{5, 5, 10, 10}, Rgb{1, 2, 3});
  img.stroke_outside(PixelBox{5, 5, 10, 10}, 2, Rgb{255, 0, 0});
  for (int y = 5; y < 10; ++y) {
    for (int x = 5; x < 10; ++x) CHECK(img.at(x, y) == Rgb{1, 2, 3});
  }
  CHECK(img.at(4, 7) == Rgb{255, 0, 0});
  CHECK(img.at(3, 7) == Rgb{255, 0, 0});
  CHECK(img.at(2, 7) == kWhite);
  CHECK(img.at(10, 10) == Rgb{255, 0, 0});
  CHECK(img.at(11, 3) == Rgb{255, 0, 0});
  CHECK(img.at(12, 12) == kWhite);
}

TEST_CASE("bilinear resize") {
  Image src(7, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) {
      src.set(x, y, Rgb{std::uint8_t(x * 30), std::uint8_t(y * 50), std::uint8_t((x * y * 13) % 256)});
    }
  }
  CHECK(resize_bilinear(src, 7, 5) == src);
  for (auto [w, h] : {std::pair{13, 9}, std::pair{3, 2}, std::pair{20, 4}}) {
    const Image out = resize_bilinear(src, w, h);
    REQUIRE(out.width() == w);
    REQUIRE(out.height() == h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int k = 0; k < 3; ++k) {
          CHECK(std::abs(out.at(x, y)[k] - bilinear_oracle(src, w, h, x, y, k)) <= 1.0);
        }
      }
    }
  }
  const Image flat = resize_bilinear(Image(5, 5, Rgb{9, 99, 199}), 11, 3);
  CHECK(flat == Image(11, 3, Rgb{9, 99, 199}));
  CHECK_THROWS_AS(resize_bilinear(src, 0, 3), Error);
}

TEST_CASE("png round trip") {
  testing::TempDir dir("png");
  Image img(17, 9);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 17; ++x) img.set(x, y, Rgb{std::uint8_t(x * 15), std::uint8_t(y * 28), 77});
  }
  write_png(img, dir.path() / "sub" / "a.png");
  CHECK(read_png(dir.path() / "sub" / "a.png") == img);
  write_png(img, dir.path() / "b.png");
  CHECK(sha256_file(dir.path() / "sub" / "a.png") == sha256_file(dir.path() / "b.png"));
  CHECK_THROWS_AS(read_png(dir.path() / "missing.png"), Error);
}

TEST_CASE("sha256 reference values") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
