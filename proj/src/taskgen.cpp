// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/taskgen.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include <fmt/format.h>

#include "docfocus/error.hpp"

namespace docfocus {

namespace {

void add_qa(ConversationSample& s, std::string question, std::string answer) {
  s.turns.push_back({Role::user, std::move(question)});
  s.turns.push_back({Role::assistant, std::move(answer)});
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

NormBox clamp_into(NormBox inner, const NormBox& outer) {
  auto clamp_axis = [](int& lo, int& hi, int olo, int ohi) {
    lo = std::clamp(lo, olo, ohi);
    hi = std::clamp(hi, olo, ohi);
    if (lo >= hi) {
      if (hi < ohi) {
        hi = lo + 1;
      } else {
        lo = hi - 1;
      }
    }
  };
  clamp_axis(inner.x1, inner.x2, outer.x1, outer.x2);
  clamp_axis(inner.y1, inner.y2, outer.y1, outer.y2);
  return inner;
}

std::string bundle_id(Task task, std::span<const PageRecord* const> pages) {
  std::string id(to_string(task));
  id += ':';
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (i > 0) id += '+';
    id += pages[i]->page_id;
  }
  return id;
}

void check_bundle(std::span<const PageRecord* const> pages) {
  if (pages.size() < 2 || pages.size() > kMaxBundlePages) {
    fail(ErrorCode::invalid_argument,
         fmt::format("multi-page samples take 2..{} pages, got {}", kMaxBundlePages, pages.size()));
  }
}

// One addressable paragraph per page.
std::vector<std::size_t> draw_bundle_boxes(std::span<const PageRecord* const> pages,
                                           const std::vector<std::vector<std::size_t>>& candidates,
                                           Rng& rng) {
  std::vector<std::size_t> picks;
  picks.reserve(pages.size());
  for (std::size_t k = 0; k < pages.size(); ++k) {
    picks.push_back(candidates[k][rng.index(candidates[k].size())]);
  }
  return picks;
}

std::vector<std::vector<std::size_t>> bundle_candidates(std::span<const PageRecord* const> pages) {
  std::vector<std::vector<std::size_t>> out;
  for (const PageRecord* p : pages) {
    out.push_back(addressable_paragraphs(*p));
    if (out.back().empty()) {
      fail(ErrorCode::no_content, "page " + p->page_id + " has no addressable paragraph");
    }
  }
  return out;
}

std::string pages_slot(std::span<const PageRecord* const> pages, const std::vector<std::size_t>& picks) {
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < pages.size(); ++k) {
    const PageRecord& p = *pages[k];
    parts.push_back(fmt::format("{}: {}", page_label(k + 1),
                                to_string(normalize(p.paragraphs[picks[k]].box, p.size))));
  }
  return join(parts, ", ");
}

std::string regex_escape(std::string_view s) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : s) {
    if (kSpecial.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

const std::map<std::string, std::string>& slot_patterns() {
  static const std::map<std::string, std::string> kPatterns = {
      {"BOX", R"((\(\d+,\d+,\d+,\d+\)))"},
      {"POINT", R"((\(\d+,\d+\)))"},
      {"COLOR", R"((red|green|blue))"},
      {"PAGES", R"((Page 1: .*))"},
      {"QUESTION", R"(([\s\S]*))"},
  };
  return kPatterns;
}

}  // namespace

std::string_view canonical_prompt(Task task) {
  switch (task) {
    case Task::foreground_ocr:
    case Task::region_ocr:
    case Task::page_ocr:
      return "Give the OCR results of the box {BOX}";
    case Task::page_markdown: return "Convert the content of the box {BOX} to markdown";
    case Task::line_ocr: return "OCR the line {POINT}";
    case Task::color_ocr: return "OCR {COLOR} box";
    case Task::region_translation: return "Translate the content of the box {BOX}";
    case Task::region_summary: return "Summarize the content of the box {BOX}";
    case Task::layout: return "Give the layout of the page";
    case Task::figure_caption: return "Give a brief description for the region {BOX} of the image";
    case Task::infigure_chat: return "{QUESTION} {BOX}";
    case Task::multipage_region_ocr: return "OCR boxes on multiple pages. {PAGES}";
    case Task::crosspage_vqa: return "Which page's box contains more characters? {PAGES}";
  }
  return "";
}

std::string fill_prompt(std::string_view templ, const PromptSlots& slots) {
  std::string out;
  std::size_t i = 0;
  while (i < templ.size()) {
    if (templ[i] == '{') {
      const std::size_t close = templ.find('}', i);
      if (close != std::string_view::npos) {
        const std::string name(templ.substr(i + 1, close - i - 1));
        if (auto it = slots.find(name); it != slots.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += templ[i++];
  }
  return out;
}

PromptSlots extract_slots(Task task, std::string_view prompt) {
  const std::string_view templ = canonical_prompt(task);
  std::string pattern;
  std::vector<std::string> names;
  std::size_t i = 0;
  while (i < templ.size()) {
    const std::size_t open = templ.find('{', i);
    if (open == std::string_view::npos) {
      pattern += regex_escape(templ.substr(i));
      break;
    }
    const std::size_t close = templ.find('}', open);
    pattern += regex_escape(templ.substr(i, open - i));
    const std::string name(templ.substr(open + 1, close - open - 1));
    pattern += slot_patterns().at(name);
    names.push_back(name);
    i = close + 1;
  }
  const std::regex re(pattern);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(prompt.begin(), prompt.end(), m, re)) {
    fail(ErrorCode::schema_violation,
         fmt::format("prompt '{}' does not match the {} template", prompt, to_string(task)));
  }
  PromptSlots slots;
  for (std::size_t k = 0; k < names.size(); ++k) slots[names[k]] = m[k + 1].str();
  return slots;
}

const std::map<Task, std::vector<std::string>>& default_prompt_variants() {
  static const std::map<Task, std::vector<std::string>> kVariants = [] {
    std::map<Task, std::vector<std::string>> v;
    const std::vector<std::string> box_ocr = {
        "Give the OCR results of the box {BOX}",
        "Read all the text inside the box {BOX}",
        "What is written in the region {BOX}?",
        "Transcribe the text within {BOX}",
        "Please recognize the characters in the box {BOX}",
        "Extract the text located in the area {BOX}",
        "OCR the content of the box {BOX}",
        "Tell me the exact text contained in {BOX}",
        "Can you read the region {BOX} for me?",
        "Output the text found in the box {BOX}",
    };
    v[Task::foreground_ocr] = box_ocr;
    v[Task::region_ocr] = box_ocr;
    v[Task::page_ocr] = box_ocr;
    v[Task::page_markdown] = {
        "Convert the content of the box {BOX} to markdown",
        "Write the region {BOX} out as markdown",
        "Render the text inside {BOX} in markdown format",
        "Give the markdown transcription of the box {BOX}",
        "Turn the content of {BOX} into markdown",
        "Produce markdown for the area {BOX}",
        "Please transcribe the box {BOX} as markdown",
        "Markdown version of the text in {BOX}, please",
        "Format the content of the box {BOX} as markdown",
        "What is the markdown for the region {BOX}?",
    };
    v[Task::line_ocr] = {
        "OCR the line {POINT}",
        "Read the text line starting at {POINT}",
        "What does the line at {POINT} say?",
        "Transcribe the line located at {POINT}",
        "Recognize the text of the line near {POINT}",
        "Give the OCR result of the line at {POINT}",
        "Please read the line that begins at {POINT}",
        "Output the content of the line at point {POINT}",
        "Which text is on the line at {POINT}?",
        "Tell me what the line {POINT} reads",
    };
    v[Task::color_ocr] = {
        "OCR {COLOR} box",
        "Read the text inside the {COLOR} box",
        "What is written in the {COLOR} box?",
        "Transcribe the content framed in {COLOR}",
        "Give the OCR results of the {COLOR} box",
        "Please recognize the text in the {COLOR} frame",
        "Extract the text marked by the {COLOR} box",
        "Tell me the text enclosed by the {COLOR} rectangle",
        "Output the characters in the {COLOR} box",
        "Can you read the {COLOR} box for me?",
    };
    v[Task::region_translation] = {
        "Translate the content of the box {BOX}",
        "Translate the text in the region {BOX}",
        "Please give a translation of the box {BOX}",
        "What is the translation of the text inside {BOX}?",
        "Render the content of {BOX} in the other language",
        "Provide a translation for the area {BOX}",
        "Translate what is written in the box {BOX}",
        "Can you translate the region {BOX}?",
        "Give the translated text of the box {BOX}",
        "Output a translation of the content within {BOX}",
    };
    v[Task::region_summary] = {
        "Summarize the content of the box {BOX}",
        "Give a short summary of the region {BOX}",
        "What is the gist of the text in {BOX}?",
        "Please summarize the text inside the box {BOX}",
        "Provide a brief summary for the area {BOX}",
        "Condense the content of {BOX} into a summary",
        "Summarize what the box {BOX} says",
        "Can you sum up the region {BOX}?",
        "Write a summary of the text located in {BOX}",
        "Briefly describe what the text in the box {BOX} is about",
    };
    v[Task::layout] = {
        "Give the layout of the page",
        "Detect the layout elements of this page",
        "List the layout regions of the document",
        "What are the layout blocks on this page?",
        "Please analyze the page layout",
        "Output the layout of the document page",
        "Identify every layout element on the page",
        "Describe the page structure with boxes",
        "Locate the titles, text blocks and figures on the page",
        "Give the layout analysis result",
    };
    v[Task::figure_caption] = {
        "Give a brief description for the region {BOX} of the image",
        "Describe the figure in the box {BOX}",
        "What is shown in the region {BOX}?",
        "Please caption the picture located at {BOX}",
        "Give a short caption for the area {BOX}",
        "What is this in the box {BOX}?",
        "Describe the image inside {BOX} briefly",
        "Write a caption for the figure at {BOX}",
        "Tell me what the picture in {BOX} depicts",
        "Summarize the visual content of the region {BOX}",
    };
    v[Task::infigure_chat] = {
        "{QUESTION} {BOX}",
        "{QUESTION} Region: {BOX}",
        "Look at the region {BOX}. {QUESTION}",
        "Regarding the area {BOX}: {QUESTION}",
        "{QUESTION} (focus on {BOX})",
        "In the region {BOX}, {QUESTION}",
        "Consider the box {BOX}. {QUESTION}",
        "About {BOX}: {QUESTION}",
        "{QUESTION} The region is {BOX}",
        "Focus on {BOX} and answer: {QUESTION}",
    };
    v[Task::multipage_region_ocr] = {
        "OCR boxes on multiple pages. {PAGES}",
        "Read the text in these boxes across pages. {PAGES}",
        "Give the OCR results of the boxes on each page. {PAGES}",
        "Transcribe the following regions from several pages. {PAGES}",
        "Please recognize the text in these per-page boxes. {PAGES}",
        "What is written in each of these boxes? {PAGES}",
        "Extract the text of one box per page. {PAGES}",
        "OCR the listed regions of the document pages. {PAGES}",
        "Output the contents of the boxes below, page by page. {PAGES}",
        "Read these regions from the multi-page document. {PAGES}",
    };
    v[Task::crosspage_vqa] = {
        "Which page's box contains more characters? {PAGES}",
        "Among these boxes, which page's box has the most characters? {PAGES}",
        "Which box holds the longest text? {PAGES}",
        "Compare the boxes and tell me which page's box has more characters. {PAGES}",
        "Which of these regions contains the largest number of characters? {PAGES}",
        "Find the page whose box has the most characters. {PAGES}",
        "Which page's region is the most text-dense? {PAGES}",
        "Tell me which box has more characters. {PAGES}",
        "Which page has the box with the most characters? {PAGES}",
        "Across these pages, which box contains the most characters? {PAGES}",
    };
    return v;
  }();
  return kVariants;
}

std::vector<std::size_t> reading_order(const std::vector<TextBox>& boxes) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double overlap = std::min(boxes[i].box.x2, boxes[j].box.x2) -
                             std::max(boxes[i].box.x1, boxes[j].box.x1);
      if (overlap > 0) parent[find(i)] = find(j);
    }
  }
  std::vector<double> column_x(n, 0.0);
  std::map<std::size_t, double> left;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = left.try_emplace(find(i), boxes[i].box.x1);
    if (!inserted) it->second = std::min(it->second, boxes[i].box.x1);
  }
  for (std::size_t i = 0; i < n; ++i) column_x[i] = left[find(i)];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (column_x[a] != column_x[b]) return column_x[a] < column_x[b];
    if (find(a) != find(b)) return find(a) < find(b);
    if (boxes[a].box.y1 != boxes[b].box.y1) return boxes[a].box.y1 < boxes[b].box.y1;
    return boxes[a].box.x1 < boxes[b].box.x1;
  });
  return order;
}

NormBox foreground_box(const PageRecord& page) {
  const std::vector<TextBox> boxes = page.all_boxes();
  if (boxes.empty()) fail(ErrorCode::no_content, "page " + page.page_id + " has no text");
  PixelBox hull = boxes.front().box;
  for (const TextBox& b : boxes) hull = union_box(hull, b.box);
  return clamp_into(normalize(hull, page.size), kFullPageBox);
}

namespace {

std::vector<std::string> ordered_texts(const PageRecord& page) {
  const std::vector<TextBox>& units = page.paragraphs.empty() ? page.lines : page.paragraphs;
  std::vector<std::string> out;
  for (std::size_t i : reading_order(units)) out.push_back(units[i].content);
  return out;
}

ConversationSample page_sample(const PageRecord& page, Task task) {
  ConversationSample s;
  s.sample_id = fmt::format("{}:{}", to_string(task), page.page_id);
  s.task = task;
  s.image_refs = {page.image_ref};
  return s;
}

}  // namespace

ConversationSample gen_foreground_ocr(const PageRecord& page, ForegroundPrompt prompt) {
  const NormBox hull = foreground_box(page);
  const NormBox box = prompt == ForegroundPrompt::full_page ? kFullPageBox : hull;
  ConversationSample s = page_sample(page, Task::foreground_ocr);
  s.ground_truth = join(ordered_texts(page), "\n");
  add_qa(s, fill_prompt(canonical_prompt(Task::foreground_ocr), {{"BOX", to_string(box)}}),
         s.ground_truth);
  return s;
}

ConversationSample gen_page_ocr(const PageRecord& page) {
  ConversationSample s = gen_foreground_ocr(page);
  s.task = Task::page_ocr;
  s.sample_id = fmt::format("{}:{}", to_string(Task::page_ocr), page.page_id);
  return s;
}

ConversationSample gen_page_markdown(const PageRecord& page) {
  const NormBox box = foreground_box(page);
  ConversationSample s = page_sample(page, Task::page_markdown);
  s.ground_truth = join(ordered_texts(page), "\n\n");
  add_qa(s, fill_prompt(canonical_prompt(Task::page_markdown), {{"BOX", to_string(box)}}),
         s.ground_truth);
  return s;
}

std::vector<std::size_t> addressable_paragraphs(const PageRecord& page) {
  std::map<NormBox, int> seen;
  std::vector<NormBox> norm;
  for (const TextBox& p : page.paragraphs) {
    norm.push_back(normalize(p.box, page.size));
    ++seen[norm.back()];
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (seen[norm[i]] == 1) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> addressable_lines(const PageRecord& page) {
  std::vector<NormBox> norm;
  for (const TextBox& l : page.lines) norm.push_back(normalize(l.box, page.size));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < page.lines.size(); ++i) {
    const NormPoint p = line_anchor_point(page.lines[i].box, page.size);
    const auto hits = std::count_if(norm.begin(), norm.end(), [&](const NormBox& b) { return b.contains(p); });
    if (hits == 1) out.push_back(i);
  }
  return out;
}

ConversationSample gen_region_ocr(const PageRecord& page, Rng& rng, std::size_t turns) {
  if (turns == 0) fail(ErrorCode::invalid_argument, "region OCR needs at least one turn");
  const std::vector<std::size_t> candidates = addressable_paragraphs(page);
  if (candidates.size() < turns) {
    fail(ErrorCode::insufficient_data,
         fmt::format("page {} has {} addressable paragraphs, {} turns requested", page.page_id,
                     candidates.size(), turns));
  }
  ConversationSample s = page_sample(page, Task::region_ocr);
  std::vector<std::string> answers;
  for (std::size_t pick : rng.sample_indices(candidates.size(), turns)) {
    const TextBox& para = page.paragraphs[candidates[pick]];
    add_qa(s,
           fill_prompt(canonical_prompt(Task::region_ocr),
                       {{"BOX", to_string(normalize(para.box, page.size))}}),
           para.content);
    answers.push_back(para.content);
  }
  s.ground_truth = join(answers, "\n");
  return s;
}

ConversationSample gen_line_ocr(const PageRecord& page, Rng& rng, std::size_t turns) {
  if (page.lines.empty()) fail(ErrorCode::no_content, "page " + page.page_id + " has no lines");
  const std::vector<std::size_t> candidates = addressable_lines(page);
  if (candidates.empty()) {
    fail(ErrorCode::insufficient_data, "page " + page.page_id + " has no addressable line");
  }
  const std::size_t k = std::clamp<std::size_t>(turns, 1, candidates.size());
  ConversationSample s = page_sample(page, Task::line_ocr);
  std::vector<std::string> answers;
  for (std::size_t pick : rng.sample_indices(candidates.size(), k)) {
    const TextBox& line = page.lines[candidates[pick]];
    add_qa(s,
           fill_prompt(canonical_prompt(Task::line_ocr),
                       {{"POINT", to_string(line_anchor_point(line.box, page.size))}}),
           line.content);
    answers.push_back(line.content);
  }
  s.ground_truth = join(answers, "\n");
  return s;
}

ConversationSample gen_color_ocr(const HybridPage& hybrid, Rng& rng) {
  if (hybrid.color_marks.size() != 3) {
    fail(ErrorCode::no_content,
         fmt::format("hybrid {} carries {} color marks, need 3", hybrid.base.page_id,
                     hybrid.color_marks.size()));
  }
  ConversationSample s;
  s.sample_id = fmt::format("{}:{}", to_string(Task::color_ocr), hybrid.base.page_id);
  s.task = Task::color_ocr;
  s.image_refs = {hybrid.composited_image_ref};
  std::vector<ColorMark> order = hybrid.color_marks;
  rng.shuffle(order);
  std::vector<std::string> answers;
  for (const ColorMark& m : order) {
    add_qa(s,
           fill_prompt(canonical_prompt(Task::color_ocr), {{"COLOR", std::string(to_string(m.color))}}),
           m.content);
    answers.push_back(m.content);
  }
  s.ground_truth = join(answers, "\n");
  return s;
}

ConversationSample gen_region_annotation(const PageRecord& page, Annotator& annotator,
                                         AnnotationTask kind, Rng& rng) {
  std::vector<std::size_t> qualifying;
  for (std::size_t i : addressable_paragraphs(page)) {
    if (char_count(page.paragraphs[i].content) > kLongTextChars) qualifying.push_back(i);
  }
  if (qualifying.empty()) {
    fail(ErrorCode::no_qualifying_box,
         fmt::format("page {} has no paragraph over {} characters", page.page_id, kLongTextChars));
  }
  const TextBox& para = page.paragraphs[qualifying[rng.index(qualifying.size())]];
  const Task task =
      kind == AnnotationTask::translate ? Task::region_translation : Task::region_summary;
  std::string annotation = annotator.annotate(kind, para.content);
  if (annotation.empty()) fail(ErrorCode::annotator_failure, "annotator returned empty text");
  check_turn_text(annotation);
  ConversationSample s = page_sample(page, task);
  s.ground_truth = annotation;
  add_qa(s, fill_prompt(canonical_prompt(task), {{"BOX", to_string(normalize(para.box, page.size))}}),
         std::move(annotation));
  return s;
}

ConversationSample gen_layout(const PageRecord& page, const LayoutRecord& layout) {
  if (layout.elements.empty()) fail(ErrorCode::no_content, "empty layout for " + page.page_id);
  std::vector<std::pair<NormBox, std::string>> rows;
  for (const LayoutElement& e : layout.elements) rows.emplace_back(normalize(e.box, page.size), e.label);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first.y1 != b.first.y1) return a.first.y1 < b.first.y1;
    return a.first.x1 < b.first.x1;
  });
  std::vector<std::string> lines;
  for (const auto& [box, label] : rows) lines.push_back(fmt::format("{}: {}", label, to_string(box)));
  ConversationSample s = page_sample(page, Task::layout);
  s.ground_truth = join(lines, "\n");
  add_qa(s, std::string(canonical_prompt(Task::layout)), s.ground_truth);
  return s;
}

namespace {

ConversationSample hybrid_sample(const HybridPage& hybrid, Task task) {
  if (hybrid.placements.empty()) {
    fail(ErrorCode::no_content, "hybrid " + hybrid.base.page_id + " has no figure placement");
  }
  ConversationSample s;
  s.sample_id = fmt::format("{}:{}", to_string(task), hybrid.base.page_id);
  s.task = task;
  s.image_refs = {hybrid.composited_image_ref};
  return s;
}

}  // namespace

ConversationSample gen_figure_caption(const HybridPage& hybrid) {
  ConversationSample s = hybrid_sample(hybrid, Task::figure_caption);
  const FigurePlacement& p = hybrid.placements.front();
  s.ground_truth = p.caption;
  add_qa(s,
         fill_prompt(canonical_prompt(Task::figure_caption),
                     {{"BOX", to_string(normalize(p.target, hybrid.base.size))}}),
         p.caption);
  return s;
}

PixelBox remap_to_page(const PixelBox& natural_box, const FigurePlacement& placement) {
  const double sx = static_cast<double>(placement.scaled_size.width) / placement.natural.size.width;
  const double sy = static_cast<double>(placement.scaled_size.height) / placement.natural.size.height;
  PixelBox out{placement.target.x1 + natural_box.x1 * sx, placement.target.y1 + natural_box.y1 * sy,
               placement.target.x1 + natural_box.x2 * sx, placement.target.y1 + natural_box.y2 * sy};
  out.x1 = std::clamp(out.x1, placement.target.x1, placement.target.x2);
  out.x2 = std::clamp(out.x2, placement.target.x1, placement.target.x2);
  out.y1 = std::clamp(out.y1, placement.target.y1, placement.target.y2);
  out.y2 = std::clamp(out.y2, placement.target.y1, placement.target.y2);
  return out;
}

ConversationSample gen_infigure_chat(const HybridPage& hybrid, Rng& rng) {
  ConversationSample s = hybrid_sample(hybrid, Task::infigure_chat);
  const FigurePlacement& p = hybrid.placements.front();
  if (p.natural.region_dialogs.empty()) {
    fail(ErrorCode::no_content, "figure " + p.natural.image_id + " has no region dialogs");
  }
  const RegionDialog& d = p.natural.region_dialogs[rng.index(p.natural.region_dialogs.size())];
  const NormBox outer = normalize(p.target, hybrid.base.size);
  PixelBox mapped = remap_to_page(d.box, p);
  NormBox box = outer;
  if (mapped.valid()) box = clamp_into(normalize(mapped, hybrid.base.size), outer);
  s.ground_truth = d.answer;
  add_qa(s,
         fill_prompt(canonical_prompt(Task::infigure_chat),
                     {{"QUESTION", d.question}, {"BOX", to_string(box)}}),
         d.answer);
  return s;
}

ConversationSample gen_multipage_region_ocr(std::span<const PageRecord* const> pages, Rng& rng) {
  check_bundle(pages);
  const auto candidates = bundle_candidates(pages);
  const std::vector<std::size_t> picks = draw_bundle_boxes(pages, candidates, rng);
  ConversationSample s;
  s.sample_id = bundle_id(Task::multipage_region_ocr, pages);
  s.task = Task::multipage_region_ocr;
  std::vector<std::string> answers;
  for (std::size_t k = 0; k < pages.size(); ++k) {
    s.image_refs.push_back(pages[k]->image_ref);
    answers.push_back(
        fmt::format("{}: {}", page_label(k + 1), pages[k]->paragraphs[picks[k]].content));
  }
  s.ground_truth = join(answers, "\n");
  add_qa(s,
         fill_prompt(canonical_prompt(Task::multipage_region_ocr), {{"PAGES", pages_slot(pages, picks)}}),
         s.ground_truth);
  return s;
}

ConversationSample gen_crosspage_vqa(std::span<const PageRecord* const> pages, Rng& rng) {
  check_bundle(pages);
  const auto candidates = bundle_candidates(pages);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::vector<std::size_t> picks = draw_bundle_boxes(pages, candidates, rng);
    std::vector<std::size_t> counts;
    for (std::size_t k = 0; k < pages.size(); ++k) {
      counts.push_back(char_count(pages[k]->paragraphs[picks[k]].content));
    }
    const auto best = std::max_element(counts.begin(), counts.end());
    if (std::count(counts.begin(), counts.end(), *best) != 1) continue;
    ConversationSample s;
    s.sample_id = bundle_id(Task::crosspage_vqa, pages);
    s.task = Task::crosspage_vqa;
    for (const PageRecord* p : pages) s.image_refs.push_back(p->image_ref);
    s.ground_truth = page_label(static_cast<std::size_t>(best - counts.begin()) + 1);
    add_qa(s,
           fill_prompt(canonical_prompt(Task::crosspage_vqa), {{"PAGES", pages_slot(pages, picks)}}),
           s.ground_truth);
    return s;
  }
  fail(ErrorCode::tie_unbreakable, bundle_id(Task::crosspage_vqa, pages) + ": ties after 100 draws");
}

std::string page_label(std::size_t k) { return fmt::format("Page {}", k); }

}  // namespace docfocus
