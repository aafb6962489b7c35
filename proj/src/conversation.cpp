// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/conversation.hpp"

#include <fmt/format.h>

#include "docfocus/error.hpp"

namespace docfocus {

namespace {

constexpr std::string_view kStart = "<|im_start|>";
constexpr std::string_view kEnd = "<|im_end|>";
constexpr std::string_view kUser = "user: ";
constexpr std::string_view kAssistant = "assistant: ";
constexpr std::string_view kImageTag = "<img>\"<image>\"</img>";

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

[[noreturn]] void malformed(std::string_view what) {
  fail(ErrorCode::schema_violation, fmt::format("malformed conversation: {}", what));
}

}  // namespace

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::foreground_ocr: return "foreground_ocr";
    case Task::region_ocr: return "region_ocr";
    case Task::line_ocr: return "line_ocr";
    case Task::color_ocr: return "color_ocr";
    case Task::region_translation: return "region_translation";
    case Task::region_summary: return "region_summary";
    case Task::layout: return "layout";
    case Task::figure_caption: return "figure_caption";
    case Task::infigure_chat: return "infigure_chat";
    case Task::multipage_region_ocr: return "multipage_region_ocr";
    case Task::crosspage_vqa: return "crosspage_vqa";
    case Task::page_ocr: return "page_ocr";
    case Task::page_markdown: return "page_markdown";
  }
  return "";
}

std::optional<Task> parse_task(std::string_view name) noexcept {
  for (Task t : kAllTasks) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

void check_turn_text(std::string_view text) {
  for (std::string_view d : kReservedDelimiters) {
    if (text.find(d) != std::string_view::npos) {
      fail(ErrorCode::reserved_delimiter, fmt::format("turn text contains '{}'", d));
    }
  }
}

void validate(const ConversationSample& sample) {
  if (sample.image_refs.empty()) fail(ErrorCode::schema_violation, "sample has no images");
  if (sample.turns.empty()) fail(ErrorCode::schema_violation, "sample has no turns");
  for (std::size_t i = 0; i < sample.turns.size(); ++i) {
    const Turn& t = sample.turns[i];
    const Role expected = i % 2 == 0 ? Role::user : Role::assistant;
    if (t.role != expected) fail(ErrorCode::schema_violation, "turns must alternate, user first");
    if (t.text.empty()) fail(ErrorCode::empty_content, "empty turn text");
    check_turn_text(t.text);
  }
}

std::string serialize_conversation(const ConversationSample& sample) {
  validate(sample);
  std::string out;
  for (std::size_t i = 0; i < sample.turns.size(); ++i) {
    const Turn& t = sample.turns[i];
    if (i > 0) out += ' ';
    out += kStart;
    if (t.role == Role::user) {
      out += kUser;
      if (i == 0) {
        for (std::size_t k = 0; k < sample.image_refs.size(); ++k) out += kImageTag;
        out += ' ';
      }
      out += '"';
      out += t.text;
      out += '"';
      out += kEnd;
    } else {
      out += kAssistant;
      out += '"';
      out += t.text;
      out += "\" ";
      out += kEnd;
    }
  }
  return out;
}

ParsedConversation parse_conversation(std::string_view flat) {
  ParsedConversation out;
  std::string_view s = flat;
  while (!s.empty()) {
    if (!out.turns.empty() && !consume(s, " ")) malformed("missing turn separator");
    if (!consume(s, kStart)) malformed("expected <|im_start|>");
    const std::size_t end = s.find(kEnd);
    if (end == std::string_view::npos) malformed("unterminated turn");
    std::string_view body = s.substr(0, end);
    s.remove_prefix(end + kEnd.size());

    Turn turn;
    if (consume(body, kUser)) {
      turn.role = Role::user;
      if (out.turns.empty()) {
        while (consume(body, kImageTag)) ++out.image_count;
        if (out.image_count == 0) malformed("first user turn carries no image");
        if (!consume(body, " ")) malformed("missing space after image tags");
      }
      if (body.size() < 2 || body.front() != '"' || body.back() != '"') malformed("unquoted user text");
      turn.text = std::string(body.substr(1, body.size() - 2));
    } else if (consume(body, kAssistant)) {
      turn.role = Role::assistant;
      if (body.size() < 3 || body.front() != '"' || body.substr(body.size() - 2) != "\" ") {
        malformed("unquoted assistant text");
      }
      turn.text = std::string(body.substr(1, body.size() - 3));
    } else {
      malformed("unknown role");
    }
    const Role expected = out.turns.size() % 2 == 0 ? Role::user : Role::assistant;
    if (turn.role != expected) malformed("turns do not alternate");
    out.turns.push_back(std::move(turn));
  }
  if (out.turns.empty()) malformed("empty conversation");
  return out;
}

nlohmann::json to_json(const ConversationSample& sample) {
  nlohmann::json turns = nlohmann::json::array();
  for (const Turn& t : sample.turns) {
    turns.push_back({{"role", t.role == Role::user ? "user" : "assistant"}, {"text", t.text}});
  }
  return {{"id", sample.sample_id},
          {"task", std::string(to_string(sample.task))},
          {"images", sample.image_refs},
          {"conversation", turns},
          {"ground_truth", sample.ground_truth},
          {"rendered", serialize_conversation(sample)}};
}

ConversationSample sample_from_json(const nlohmann::json& j) {
  try {
    ConversationSample s;
    s.sample_id = j.at("id").get<std::string>();
    const auto task = parse_task(j.at("task").get<std::string>());
    if (!task) fail(ErrorCode::schema_violation, "unknown task " + j.at("task").dump());
    s.task = *task;
    s.image_refs = j.at("images").get<std::vector<std::string>>();
    for (const auto& t : j.at("conversation")) {
      const std::string role = t.at("role").get<std::string>();
      if (role != "user" && role != "assistant") fail(ErrorCode::schema_violation, "bad role " + role);
      s.turns.push_back({role == "user" ? Role::user : Role::assistant, t.at("text").get<std::string>()});
    }
    s.ground_truth = j.at("ground_truth").get<std::string>();
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::schema_violation, std::string("sample record: ") + e.what());
  }
}

}  // namespace docfocus
