// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace docfocus {

enum class AnnotationTask { translate, summarize };

std::string_view to_string(AnnotationTask task) noexcept;

/// Produces translation/summary annotations for long in-box texts. Either
/// returns a non-empty annotation or throws Error(annotator_failure).
class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::string annotate(AnnotationTask task, std::string_view text) = 0;
};

/// Runs without any external service: translation is the identity and the
/// summary is the first 160 scalar values of the source.
class OfflineAnnotator final : public Annotator {
 public:
  static constexpr std::size_t kSummaryChars = 160;
  std::string annotate(AnnotationTask task, std::string_view text) override;
};

struct CommandAnnotatorOptions {
  std::string command;  // run through /bin/sh -c
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
};

/// Spawns `command` per request, writes {"task":..,"text":..} to its stdin
/// and expects {"text":..} on stdout. Failed or timed-out attempts are
/// retried `retries` times.
class CommandAnnotator final : public Annotator {
 public:
  explicit CommandAnnotator(CommandAnnotatorOptions options);
  std::string annotate(AnnotationTask task, std::string_view text) override;

 private:
  std::string run_once(const std::string& request) const;

  CommandAnnotatorOptions options_;
};

}  // namespace docfocus
