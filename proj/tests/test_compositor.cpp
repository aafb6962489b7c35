// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "docfocus/compositor.hpp"
#include "docfocus/error.hpp"
#include "support.hpp"

using namespace docfocus;
using docfocus::testing::make_page;

namespace {

NaturalImageRecord natural(int w, int h, std::string caption = "a dog on grass") {
  NaturalImageRecord n;
  n.image_id = "n" + std::to_string(w) + "x" + std::to_string(h);
  n.image_ref = n.image_id + ".png";
  n.size = {w, h};
  n.caption = std::move(caption);
  return n;
}

// Five full-width bands stacked down a 1000x1000 page.
PageRecord banded_page() {
  std::vector<std::pair<PixelBox, std::string>> paras;
  for (int i = 0; i < 5; ++i) {
    paras.push_back({PixelBox{50, 50.0 + i * 190, 950, 50.0 + i * 190 + 150}, "band " + std::to_string(i)});
  }
  return make_page("bands", {1000, 1000}, paras);
}

bool has_box(const std::vector<TextBox>& boxes, const TextBox& b) {
  return std::find(boxes.begin(), boxes.end(), b) != boxes.end();
}

// Triples (in draw order) of pairwise-disjoint candidate indices.
std::set<std::vector<std::size_t>> disjoint_triples(const std::vector<const TextBox*>& c) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b)
      for (std::size_t d = 0; d < c.size(); ++d) {
        if (a == b || a == d || b == d) continue;
        if (intersection_area(c[a]->box, c[b]->box) > 0 || intersection_area(c[a]->box, c[d]->box) > 0 ||
            intersection_area(c[b]->box, c[d]->box) > 0)
          continue;
        out.insert({a, b, d});
      }
  return out;
}

}  // namespace

TEST_CASE("scale examples") {
  const ScaleBounds wide = scale_bounds({800, 600}, {1024, 1024});
  CHECK(wide.axis == ScaleAxis::width);
  CHECK(wide.lo == 307);
  CHECK(wide.hi == 921);
  CHECK(scaled_size_for({800, 600}, wide.axis, wide.lo) == PageSize{307, 230});

  const ScaleBounds tall = scale_bounds({500, 900}, {1024, 1024});
  CHECK(tall.axis == ScaleAxis::height);
  CHECK(tall.lo == 409);
  CHECK(tall.hi == 921);
  CHECK(scaled_size_for({500, 900}, tall.axis, tall.lo) == PageSize{227, 409});

  CHECK(scale_bounds({1000, 1000}, {1000, 1000}).axis == ScaleAxis::height);
  CHECK(scale_bounds({100, 100}, {1000, 1000}).lo == 400);
}

TEST_CASE("scaled sizes respect bounds and aspect") {
  std::mt19937_64 gen(21);
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const PageSize nat{std::uniform_int_distribution<int>(16, 3000)(gen),
                       std::uniform_int_distribution<int>(16, 3000)(gen)};
    const PageSize page{std::uniform_int_distribution<int>(200, 2500)(gen),
                        std::uniform_int_distribution<int>(200, 2500)(gen)};
    const PageSize s = scale_figure(nat, page, rng);
    CHECK(s.width <= page.width);
    CHECK(s.height <= page.height);
    CHECK(s.width >= 1);
    CHECK(s.height >= 1);
    if (double(nat.width) / nat.height > double(page.width) / page.height) {
      CHECK(s.width >= int(std::floor(0.3 * page.width + 1e-9)));
      CHECK(s.width <= int(std::floor(0.9 * page.width + 1e-9)));
      CHECK(std::abs(s.height - double(s.width) * nat.height / nat.width) < 1.0);
    } else {
      CHECK(s.height >= int(std::floor(0.4 * page.height + 1e-9)));
      CHECK(s.height <= int(std::floor(0.9 * page.height + 1e-9)));
      CHECK(std::abs(s.width - double(s.height) * nat.width / nat.height) < 1.0);
    }
  }
}

TEST_CASE("scale parameters are validated") {
  CHECK_THROWS_AS((ScaleParams{0.5, 0.4, 0.4, 0.9}.validate()), Error);
  CHECK_THROWS_AS((ScaleParams{0.3, 0.9, 0.0, 0.9}.validate()), Error);
  CHECK_THROWS_AS((ScaleParams{0.3, 1.2, 0.4, 0.9}.validate()), Error);
  CHECK_NOTHROW(ScaleParams{}.validate());
}

TEST_CASE("extreme aspect ratios fail after the retry budget") {
  Rng rng(1);
  try {
    scale_figure({1, 100000}, {1000, 10}, rng);
    FAIL("expected placement_infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::placement_infeasible);
  }
}

TEST_CASE("placement removes exactly the overlapped bands") {
  const PageRecord page = banded_page();
  const NaturalImageRecord nat = natural(400, 300);
  bool saw_two = false;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const Placement p = place_figure(page, nat, rng);
    const PixelBox& t = p.placement.target;
    CHECK(t.x1 >= 0);
    CHECK(t.y1 >= 0);
    CHECK(t.x2 <= 1000);
    CHECK(t.y2 <= 1000);
    std::size_t hit = 0;
    for (const TextBox& b : page.paragraphs) {
      const bool overlaps = intersection_area(b.box, t) > 0;
      hit += overlaps;
      CHECK(has_box(p.removed, b) == overlaps);
      CHECK(has_box(p.surviving, b) == !overlaps);
    }
    CHECK(p.surviving.size() + p.removed.size() == 5);
    if (hit == 2) {
      saw_two = true;
      CHECK(p.surviving.size() == 3);
    }
  }
  CHECK(saw_two);
}

TEST_CASE("a figure in an empty region keeps every box") {
  const PageRecord page =
      make_page("corner", {1000, 1000}, {{PixelBox{0, 0, 40, 40}, "tiny corner"}});
  const NaturalImageRecord nat = natural(300, 300);
  bool saw_clear = false;
  for (std::uint64_t seed = 0; seed < 200 && !saw_clear; ++seed) {
    Rng rng(seed);
    const Placement p = place_figure(page, nat, rng);
    if (intersection_area(p.placement.target, page.paragraphs[0].box) == 0) {
      saw_clear = true;
      CHECK(p.surviving == page.all_boxes());
      CHECK(p.removed.empty());
    }
  }
  CHECK(saw_clear);
}

TEST_CASE("boxes sharing pixels with a removed box are dropped") {
  // The line shares pixels with the paragraph but can sit outside the figure.
  const PageRecord page = make_page("c", {1000, 1000}, {{PixelBox{0, 0, 1000, 100}, "paragraph text"}},
                                    {{PixelBox{0, 80, 1000, 100}, "line text"}});
  const NaturalImageRecord nat = natural(1000, 100);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Placement p = place_figure(page, nat, rng);
    if (intersection_area(p.placement.target, page.paragraphs[0].box) > 0) {
      CHECK(p.surviving.empty());
    }
  }
}

TEST_CASE("render_interleaved pixel semantics") {
  PageRecord page = banded_page();
  Image page_img(1000, 1000);
  for (const TextBox& b : page.paragraphs) page_img.fill(b.box, Rgb{20, 20, 20});
  page_img.set(0, 0, Rgb{1, 2, 3});
  Image nat_img(40, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) nat_img.set(x, y, Rgb{std::uint8_t(x * 6), std::uint8_t(y * 8), 200});
  NaturalImageRecord nat = natural(40, 30);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Placement p = place_figure(page, nat, rng);
    const Image out = render_interleaved(page_img, nat_img, p.placement, p.removed);
    const Image fig = resize_bilinear(nat_img, p.placement.scaled_size.width, p.placement.scaled_size.height);
    const PixelBox& t = p.placement.target;
    const int cx = int(t.x1) + p.placement.scaled_size.width / 2;
    const int cy = int(t.y1) + p.placement.scaled_size.height / 2;
    CHECK(out.at(cx, cy) == fig.at(cx - int(t.x1), cy - int(t.y1)));
    for (const TextBox& r : p.removed) {
      const int rx = int((r.box.x1 + r.box.x2) / 2);
      const int ry = int((r.box.y1 + r.box.y2) / 2);
      if (!(rx >= t.x1 && rx < t.x2 && ry >= t.y1 && ry < t.y2)) CHECK(out.at(rx, ry) == kWhite);
    }
    if (!(t.x1 <= 0 && t.y1 <= 0)) CHECK(out.at(0, 0) == Rgb{1, 2, 3});
  }
}

TEST_CASE("three disjoint paragraphs get three colors") {
  const PageRecord page = make_page(
      "three", {600, 600},
      {{PixelBox{100, 100, 200, 200}, "alpha text"}, {PixelBox{300, 300, 400, 400}, "bravo text"},
       {PixelBox{100, 400, 200, 500}, "charlie text"}});
  Image img(600, 600);
  for (const TextBox& b : page.paragraphs) img.fill(b.box, Rgb{30, 30, 30});
  Rng rng(5);
  const ColorPaint paint = paint_color_boxes(page, img, rng);
  REQUIRE(paint.marks.size() == 3);
  std::set<MarkColor> colors;
  for (const ColorMark& m : paint.marks) colors.insert(m.color);
  CHECK(colors.size() == 3);
  CHECK(paint.marks[0].color == MarkColor::red);
  CHECK(paint.marks[1].color == MarkColor::green);
  CHECK(paint.marks[2].color == MarkColor::blue);
  CHECK(stroke_width({600, 600}) == 2);
  CHECK(stroke_width({1000, 600}) == 3);
  for (const ColorMark& m : paint.marks) {
    const int x1 = int(m.box.x1);
    const int ym = int((m.box.y1 + m.box.y2) / 2);
    CHECK(paint.image.at(x1 - 1, ym) == rgb(m.color));
    CHECK(paint.image.at(x1 + 3, ym) == Rgb{30, 30, 30});
  }
  CHECK(rgb(MarkColor::red) == Rgb{255, 0, 0});
}

TEST_CASE("too few candidates is infeasible") {
  const PageRecord page = make_page(
      "few", {600, 600}, {{PixelBox{0, 0, 100, 100}, "long enough"}, {PixelBox{200, 0, 300, 100}, "abc"}});
  Rng rng(1);
  try {
    select_color_marks(page.all_boxes(), rng);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::color_hybrid_infeasible);
  }
}

TEST_CASE("color triples match an enumeration oracle replaying the rng") {
  std::mt19937_64 gen(99);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::pair<PixelBox, std::string>> paras;
    const int n = std::uniform_int_distribution<int>(3, 9)(gen);
    for (int i = 0; i < n; ++i) {
      const double x = std::uniform_int_distribution<int>(0, 700)(gen);
      const double y = std::uniform_int_distribution<int>(0, 700)(gen);
      const double w = std::uniform_int_distribution<int>(20, 300)(gen);
      const double h = std::uniform_int_distribution<int>(20, 300)(gen);
      const int len = std::uniform_int_distribution<int>(2, 9)(gen);
      paras.push_back({PixelBox{x, y, x + w, y + h}, std::string(std::size_t(len), 'x')});
    }
    const PageRecord page = make_page("r", {1000, 1000}, paras);
    std::vector<const TextBox*> cands;
    for (const TextBox& b : page.paragraphs)
      if (b.content.size() >= kMinMarkChars) cands.push_back(&b);

    const std::uint64_t seed = gen();
    std::optional<std::vector<std::size_t>> expected;
    if (cands.size() >= 3) {
      const auto triples = disjoint_triples(cands);
      Rng replay(seed);
      for (int a = 0; a < kMaxAttempts; ++a) {
        const auto pick = replay.sample_indices(cands.size(), 3);
        if (triples.count(pick)) {
          expected = pick;
          break;
        }
      }
    }
    Rng rng(seed);
    try {
      const auto marks = select_color_marks(page.all_boxes(), rng);
      REQUIRE(expected.has_value());
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(marks[k].box == cands[(*expected)[k]]->box);
        CHECK(marks[k].color == kMarkColors[k]);
      }
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::color_hybrid_infeasible);
      CHECK_FALSE(expected.has_value());
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("hybrid sidecar round trip") {
  const PageRecord page = banded_page();
  NaturalImageRecord nat = natural(300, 200);
  Corpus corpus;
  corpus.add_page(page);
  corpus.add_natural(nat);
  Image page_img(1000, 1000);
  Image nat_img(300, 200, Rgb{0, 128, 0});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    try {
      HybridResult h = synthesize_hybrid(page, page_img, &nat, &nat_img, true, rng);
      h.page.composited_image_ref = "hybrid/x.png";
      for (const ColorMark& m : h.page.color_marks) {
        CHECK(intersection_area(m.box, h.page.placements[0].target) == 0);
      }
      const HybridPage back = hybrid_from_json(to_json(h.page), corpus);
      CHECK(back.base == h.page.base);
      CHECK(back.color_marks == h.page.color_marks);
      CHECK(back.surviving_boxes == h.page.surviving_boxes);
      CHECK(back.composited_image_ref == "hybrid/x.png");
      REQUIRE(back.placements.size() == 1);
      CHECK(back.placements[0].target == h.page.placements[0].target);
      CHECK(back.placements[0].scaled_size == h.page.placements[0].scaled_size);
      CHECK(back.placements[0].caption == "a dog on grass");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::color_hybrid_infeasible);
    }
  }
}
