// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "docfocus/error.hpp"
#include "docfocus/geometry.hpp"

using namespace docfocus;

namespace {

// Exact round-half-up of v * 1000 / extent for integer inputs.
int grid_oracle(long long v, long long extent) { return static_cast<int>((2 * v * 1000 + extent) / (2 * extent)); }

// Unit cells covered by both integer boxes, counted one by one.
long long cell_overlap(int ax1, int ay1, int ax2, int ay2, int bx1, int by1, int bx2, int by2) {
  long long n = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const bool in_a = x >= ax1 && x < ax2 && y >= ay1 && y < ay2;
      const bool in_b = x >= bx1 && x < bx2 && y >= by1 && y < by2;
      n += in_a && in_b;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("normalize maps pixels onto the 1000 grid") {
  CHECK(normalize(PixelBox{0, 0, 2048, 2048}, {2048, 2048}) == NormBox{0, 0, 1000, 1000});
  CHECK(normalize(PixelBox{2, 2, 998, 998}, {1000, 1000}) == NormBox{2, 2, 998, 998});
  CHECK(normalize(PixelBox{512, 256, 768, 512}, {1024, 1024}) == NormBox{500, 250, 750, 500});
}

TEST_CASE("normalize agrees with exact integer rounding") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 20000; ++i) {
    const int w = std::uniform_int_distribution<int>(1, 5000)(gen);
    const int h = std::uniform_int_distribution<int>(1, 5000)(gen);
    if (w < 2 || h < 2) continue;
    int x1 = std::uniform_int_distribution<int>(0, w - 1)(gen);
    int x2 = std::uniform_int_distribution<int>(x1 + 1, w)(gen);
    int y1 = std::uniform_int_distribution<int>(0, h - 1)(gen);
    int y2 = std::uniform_int_distribution<int>(y1 + 1, h)(gen);
    const NormBox got = normalize(PixelBox{double(x1), double(y1), double(x2), double(y2)}, {w, h});
    REQUIRE(got.valid());
    const int ox1 = grid_oracle(x1, w);
    const int ox2 = grid_oracle(x2, w);
    if (ox1 < ox2) {
      CHECK(got.x1 == ox1);
      CHECK(got.x2 == ox2);
    } else {
      CHECK(got.x2 - got.x1 == 1);
    }
    const int oy1 = grid_oracle(y1, h);
    const int oy2 = grid_oracle(y2, h);
    if (oy1 < oy2) {
      CHECK(got.y1 == oy1);
      CHECK(got.y2 == oy2);
    } else {
      CHECK(got.y2 - got.y1 == 1);
    }
  }
}

TEST_CASE("normalize rejects bad input") {
  try {
    normalize(PixelBox{0, 0, 1100, 10}, {1000, 1000});
    FAIL("expected out_of_bounds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_bounds);
  }
  CHECK_THROWS_AS(normalize(PixelBox{10, 0, 5, 10}, {1000, 1000}), Error);
  CHECK_THROWS_AS(normalize(PixelBox{0, 0, 5, 5}, {0, 10}), Error);
}

TEST_CASE("degenerate boxes are widened to one grid unit") {
  CHECK(normalize(PixelBox{0, 0, 0.2, 0.2}, {10000, 10000}) == NormBox{0, 0, 1, 1});
  CHECK(normalize(PixelBox{9999.8, 9999.8, 10000, 10000}, {10000, 10000}) ==
        NormBox{999, 999, 1000, 1000});
}

TEST_CASE("denormalize") {
  auto eq = [](const PixelBox& a, const PixelBox& b) {
    return a.x1 == doctest::Approx(b.x1) && a.y1 == doctest::Approx(b.y1) &&
           a.x2 == doctest::Approx(b.x2) && a.y2 == doctest::Approx(b.y2);
  };
  CHECK(eq(denormalize(NormBox{0, 0, 1000, 1000}, {500, 500}), PixelBox{0, 0, 500, 500}));
  CHECK(eq(denormalize(NormBox{500, 500, 1000, 1000}, {1000, 1000}), PixelBox{500, 500, 1000, 1000}));
  CHECK(eq(denormalize(NormBox{2, 2, 998, 998}, {1024, 1024}),
           PixelBox{2.048, 2.048, 1021.952, 1021.952}));
}

TEST_CASE("intersection and iou") {
  const PixelBox a{0, 0, 10, 10};
  const PixelBox b{5, 5, 15, 15};
  CHECK(intersection_area(a, a) == 100);
  CHECK(intersection_area(a, PixelBox{10, 0, 20, 10}) == 0);
  CHECK(intersection_area(a, b) == 25);
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, PixelBox{20, 20, 30, 30}) == 0.0);
  CHECK(iou(a, b) == doctest::Approx(25.0 / 175.0));
}

TEST_CASE("intersection area matches a cell-counting oracle") {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> c(0, 63);
  for (int i = 0; i < 2000; ++i) {
    int v[8];
    for (int& x : v) x = c(gen);
    if (v[0] == v[2] || v[1] == v[3] || v[4] == v[6] || v[5] == v[7]) continue;
    const int ax1 = std::min(v[0], v[2]), ax2 = std::max(v[0], v[2]);
    const int ay1 = std::min(v[1], v[3]), ay2 = std::max(v[1], v[3]);
    const int bx1 = std::min(v[4], v[6]), bx2 = std::max(v[4], v[6]);
    const int by1 = std::min(v[5], v[7]), by2 = std::max(v[5], v[7]);
    const PixelBox a{double(ax1), double(ay1), double(ax2), double(ay2)};
    const PixelBox b{double(bx1), double(by1), double(bx2), double(by2)};
    const long long cells = cell_overlap(ax1, ay1, ax2, ay2, bx1, by1, bx2, by2);
    CHECK(intersection_area(a, b) == doctest::Approx(double(cells)));
    const double uni = a.area() + b.area() - double(cells);
    CHECK(iou(a, b) == doctest::Approx(double(cells) / uni));
  }
}

TEST_CASE("union box") {
  CHECK(union_box(PixelBox{0, 5, 10, 10}, PixelBox{5, 0, 20, 8}) == PixelBox{0, 0, 20, 10});
}

TEST_CASE("line anchor point") {
  CHECK(line_anchor_point(PixelBox{0, 0, 1000, 20}, {1000, 1000}) == NormPoint{2, 10});
  CHECK(line_anchor_point(PixelBox{100, 100, 900, 140}, {1000, 1000}) == NormPoint{102, 120});
  std::mt19937_64 gen(3);
  for (int i = 0; i < 1000; ++i) {
    const int w = std::uniform_int_distribution<int>(50, 4000)(gen);
    const int h = std::uniform_int_distribution<int>(50, 4000)(gen);
    const double x1 = std::uniform_real_distribution<double>(0, w - 1)(gen);
    const double x2 = std::uniform_real_distribution<double>(x1 + 0.1, w)(gen);
    const double y1 = std::uniform_real_distribution<double>(0, h - 1)(gen);
    const double y2 = std::uniform_real_distribution<double>(y1 + 0.1, h)(gen);
    const PixelBox line{x1, y1, std::min<double>(x2, w), std::min<double>(y2, h)};
    CHECK(normalize(line, {w, h}).contains(line_anchor_point(line, {w, h})));
  }
}

TEST_CASE("coordinate text") {
  CHECK(to_string(NormBox{2, 2, 998, 998}) == "(2,2,998,998)");
  CHECK(to_string(NormPoint{102, 120}) == "(102,120)");
}
