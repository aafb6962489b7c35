// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace docfocus {

enum class Task {
  foreground_ocr,
  region_ocr,
  line_ocr,
  color_ocr,
  region_translation,
  region_summary,
  layout,
  figure_caption,
  infigure_chat,
  multipage_region_ocr,
  crosspage_vqa,
  page_ocr,
  page_markdown,
};

inline constexpr std::array<Task, 13> kAllTasks = {
    Task::foreground_ocr,   Task::region_ocr,    Task::line_ocr,
    Task::color_ocr,        Task::region_translation, Task::region_summary,
    Task::layout,           Task::figure_caption, Task::infigure_chat,
    Task::multipage_region_ocr, Task::crosspage_vqa, Task::page_ocr,
    Task::page_markdown,
};

std::string_view to_string(Task task) noexcept;
std::optional<Task> parse_task(std::string_view name) noexcept;

enum class Role { user, assistant };

struct Turn {
  Role role = Role::user;
  std::string text;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct ConversationSample {
  std::string sample_id;
  Task task = Task::foreground_ocr;
  std::vector<std::string> image_refs;
  std::vector<Turn> turns;
  std::string ground_truth;

  friend bool operator==(const ConversationSample&, const ConversationSample&) = default;
};

/// Strings that may not appear inside turn text.
inline constexpr std::array<std::string_view, 5> kReservedDelimiters = {
    "<|im_start|>", "<|im_end|>", "<img>", "</img>", "<image>"};

/// Throws Error(reserved_delimiter) when the text contains one of them.
void check_turn_text(std::string_view text);

/// Throws unless turns alternate user/assistant starting with the user, every
/// text is non-empty and delimiter-free, and there is at least one image.
void validate(const ConversationSample& sample);

/// Flat chat-template form:
///   <|im_start|>user: <img>"<image>"</img> "Q"<|im_end|> <|im_start|>assistant: "A" <|im_end|>
/// The image tag is repeated once per image on the first user turn only;
/// turns are joined by a single space.
std::string serialize_conversation(const ConversationSample& sample);

struct ParsedConversation {
  std::size_t image_count = 0;
  std::vector<Turn> turns;

  friend bool operator==(const ParsedConversation&, const ParsedConversation&) = default;
};

/// Inverse of serialize_conversation. Throws Error(schema_violation).
ParsedConversation parse_conversation(std::string_view flat);

/// JSONL record: id, task, images, conversation, ground_truth, rendered.
nlohmann::json to_json(const ConversationSample& sample);
ConversationSample sample_from_json(const nlohmann::json& j);

}  // namespace docfocus
