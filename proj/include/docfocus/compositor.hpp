// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "docfocus/corpus.hpp"
#include "docfocus/geometry.hpp"
#include "docfocus/image.hpp"
#include "docfocus/rng.hpp"

namespace docfocus {

/// Figure scaling ratios: the scaled width is drawn from
/// [alpha*W, beta*W] and the scaled height from [eta*H, gamma*H] of the page.
struct ScaleParams {
  double alpha = 0.3;
  double beta = 0.9;
  double eta = 0.4;
  double gamma = 0.9;

  /// Requires 0 < alpha < beta <= 1 and 0 < eta < gamma <= 1.
  void validate() const;
};

enum class ScaleAxis { width, height };

struct ScaleBounds {
  ScaleAxis axis;  // the dimension drawn at random
  int lo;          // inclusive
  int hi;          // inclusive
};

/// Wider-than-page figures draw their width, everything else its height.
ScaleBounds scale_bounds(const PageSize& natural, const PageSize& page,
                         const ScaleParams& params = {});

/// Size for a drawn value of the bounded axis; the other axis follows the
/// natural aspect ratio, floored.
PageSize scaled_size_for(const PageSize& natural, ScaleAxis axis, int drawn);

/// Draws a figure size. Retries up to 100 times when a dimension floors to
/// zero, then throws Error(placement_infeasible).
PageSize scale_figure(const PageSize& natural, const PageSize& page, Rng& rng,
                      const ScaleParams& params = {});

struct FigurePlacement {
  NaturalImageRecord natural;
  PageSize scaled_size;
  PixelBox target;
  std::string caption;
};

struct Placement {
  FigurePlacement placement;
  std::vector<TextBox> surviving;
  /// Boxes under the figure; these get white-filled.
  std::vector<TextBox> removed;
};

/// Scales the figure, draws a top-left corner uniformly over the positions
/// that keep it on the page and splits the page boxes into removed (any
/// positive overlap with the target) and surviving. A box that shares pixels
/// with a removed box is dropped from the survivors as well, since the
/// white fill would erase part of it.
Placement place_figure(const PageRecord& page, const NaturalImageRecord& natural, Rng& rng,
                       const ScaleParams& params = {});

/// White-fills the removed boxes, then pastes the bilinear-resized figure.
Image render_interleaved(const Image& page_image, const Image& natural_image,
                         const FigurePlacement& placement, const std::vector<TextBox>& removed);

enum class MarkColor { red, green, blue };

inline constexpr MarkColor kMarkColors[] = {MarkColor::red, MarkColor::green, MarkColor::blue};

std::string_view to_string(MarkColor color) noexcept;
MarkColor parse_mark_color(std::string_view s);
Rgb rgb(MarkColor color) noexcept;

struct ColorMark {
  MarkColor color;
  PixelBox box;
  std::string content;

  friend bool operator==(const ColorMark&, const ColorMark&) = default;
};

/// Minimum non-whitespace characters a box needs to be color-marked.
inline constexpr std::size_t kMinMarkChars = 5;
inline constexpr int kMaxAttempts = 100;

/// Draws three distinct candidates (boxes with at least kMinMarkChars
/// characters) until they are pairwise disjoint; colors are assigned red,
/// green, blue in draw order. Throws Error(color_hybrid_infeasible).
std::vector<ColorMark> select_color_marks(const std::vector<TextBox>& boxes, Rng& rng);

/// max(2, floor(0.003 * page width)).
int stroke_width(const PageSize& page) noexcept;

void paint_color_marks(Image& image, const std::vector<ColorMark>& marks);

struct ColorPaint {
  std::vector<ColorMark> marks;
  Image image;
};

ColorPaint paint_color_boxes(const PageRecord& page, const Image& page_image, Rng& rng);

struct HybridPage {
  PageRecord base;
  std::vector<FigurePlacement> placements;
  std::vector<ColorMark> color_marks;
  std::vector<TextBox> surviving_boxes;
  std::string composited_image_ref;
};

struct HybridResult {
  HybridPage page;
  Image image;
};

/// Figure first (when given), then color marks drawn from the survivors.
HybridResult synthesize_hybrid(const PageRecord& page, const Image& page_image,
                               const NaturalImageRecord* natural, const Image* natural_image,
                               bool color_marks, Rng& rng, const ScaleParams& params = {});

/// Sidecar record written next to a composited PNG.
Json to_json(const HybridPage& hybrid);
/// Rebuilds a hybrid from its sidecar; the base page and natural records are
/// looked up in the corpus.
HybridPage hybrid_from_json(const Json& j, const Corpus& corpus);

}  // namespace docfocus
