// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "docfocus/annotator.hpp"
#include "docfocus/compositor.hpp"
#include "docfocus/conversation.hpp"
#include "docfocus/corpus.hpp"
#include "docfocus/rng.hpp"

namespace docfocus {

/// Foreground prompts never touch the outermost two grid units.
inline constexpr int kForegroundMargin = 2;
/// Region translation/summary needs strictly more characters than this.
inline constexpr std::size_t kLongTextChars = 400;
inline constexpr std::size_t kMaxBundlePages = 8;

/// Prompt slot placeholders used by the canonical prompts and the SFT
/// variants: {BOX}, {POINT}, {COLOR}, {PAGES}, {QUESTION}.
using PromptSlots = std::map<std::string, std::string>;

/// The prompt each generator emits, with slot placeholders.
std::string_view canonical_prompt(Task task);

std::string fill_prompt(std::string_view templ, const PromptSlots& slots);

/// Recovers slot values from a prompt produced with canonical_prompt(task).
/// Throws Error(schema_violation) when the text does not match.
PromptSlots extract_slots(Task task, std::string_view prompt);

/// Ten phrasings per task, each carrying the same placeholders as the
/// canonical prompt.
const std::map<Task, std::vector<std::string>>& default_prompt_variants();

/// Indices of `boxes` in reading order: columns are connected components of
/// horizontal overlap, left to right; inside a column top-to-bottom then
/// left-to-right.
std::vector<std::size_t> reading_order(const std::vector<TextBox>& boxes);

/// Normalized hull of every text box, clamped into [2,998] on both axes.
NormBox foreground_box(const PageRecord& page);

/// Full-page foreground prompt box (2,2,998,998).
inline constexpr NormBox kFullPageBox{kForegroundMargin, kForegroundMargin,
                                      kNormScale - kForegroundMargin,
                                      kNormScale - kForegroundMargin};

enum class ForegroundPrompt { hull, full_page };

ConversationSample gen_foreground_ocr(const PageRecord& page,
                                      ForegroundPrompt prompt = ForegroundPrompt::hull);
/// Foreground sample tagged page_ocr.
ConversationSample gen_page_ocr(const PageRecord& page);
/// Hull prompt asking for markdown; paragraphs separated by blank lines.
ConversationSample gen_page_markdown(const PageRecord& page);

ConversationSample gen_region_ocr(const PageRecord& page, Rng& rng, std::size_t turns = 1);
ConversationSample gen_line_ocr(const PageRecord& page, Rng& rng, std::size_t turns = 1);
ConversationSample gen_color_ocr(const HybridPage& hybrid, Rng& rng);
ConversationSample gen_region_annotation(const PageRecord& page, Annotator& annotator,
                                         AnnotationTask kind, Rng& rng);
ConversationSample gen_layout(const PageRecord& page, const LayoutRecord& layout);
ConversationSample gen_figure_caption(const HybridPage& hybrid);
ConversationSample gen_infigure_chat(const HybridPage& hybrid, Rng& rng);
ConversationSample gen_multipage_region_ocr(std::span<const PageRecord* const> pages, Rng& rng);
ConversationSample gen_crosspage_vqa(std::span<const PageRecord* const> pages, Rng& rng);

/// Paragraph indices whose normalized box is unique on the page, so that a
/// prompt box names exactly one paragraph.
std::vector<std::size_t> addressable_paragraphs(const PageRecord& page);

/// Line indices whose anchor point falls inside exactly one normalized line box.
std::vector<std::size_t> addressable_lines(const PageRecord& page);

/// Maps a box in natural-image pixels into page pixels through a placement.
PixelBox remap_to_page(const PixelBox& natural_box, const FigurePlacement& placement);

/// "Page k" for 1-based k.
std::string page_label(std::size_t k);

}  // namespace docfocus
