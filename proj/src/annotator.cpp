// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/annotator.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <json.hpp>

#include <fmt/format.h>

#include "docfocus/error.hpp"
#include "docfocus/unicode.hpp"

namespace docfocus {

std::string_view to_string(AnnotationTask task) noexcept {
  return task == AnnotationTask::translate ? "translate" : "summarize";
}

std::string OfflineAnnotator::annotate(AnnotationTask task, std::string_view text) {
  if (task == AnnotationTask::translate) return std::string(text);
  return unicode::prefix(text, kSummaryChars);
}

CommandAnnotator::CommandAnnotator(CommandAnnotatorOptions options) : options_(std::move(options)) {
  if (options_.command.empty()) fail(ErrorCode::invalid_config, "annotator command is empty");
  if (options_.retries < 0) fail(ErrorCode::invalid_config, "annotator retries must be >= 0");
}

std::string CommandAnnotator::annotate(AnnotationTask task, std::string_view text) {
  const std::string request =
      nlohmann::json{{"task", std::string(to_string(task))}, {"text", std::string(text)}}.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    try {
      const std::string response = run_once(request);
      const auto j = nlohmann::json::parse(response);
      std::string out = j.at("text").get<std::string>();
      if (out.empty()) fail(ErrorCode::annotator_failure, "empty annotation");
      return out;
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  fail(ErrorCode::annotator_failure,
       fmt::format("'{}' failed after {} attempts: {}", options_.command, options_.retries + 1,
                   last_error));
}

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe(fds) != 0) fail(ErrorCode::annotator_failure, "pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

}  // namespace

std::string CommandAnnotator::run_once(const std::string& request) const {
  Pipe in;
  Pipe out;
  const pid_t pid = ::fork();
  if (pid < 0) fail(ErrorCode::annotator_failure, "fork() failed");
  if (pid == 0) {
    ::dup2(in.fds[0], STDIN_FILENO);
    ::dup2(out.fds[1], STDOUT_FILENO);
    ::close(in.fds[0]);
    ::close(in.fds[1]);
    ::close(out.fds[0]);
    ::close(out.fds[1]);
    ::execl("/bin/sh", "sh", "-c", options_.command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  in.close_read();
  out.close_write();

  // Requests are small; a blocked write only happens if the child stops
  // reading, which the timeout below also covers via SIGKILL.
  ::signal(SIGPIPE, SIG_IGN);
  std::size_t written = 0;
  while (written < request.size()) {
    const ssize_t n = ::write(in.fds[1], request.data() + written, request.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  in.close_write();

  std::string response;
  const auto deadline = std::chrono::steady_clock::now() + options_.timeout;
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{out.fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) {
      timed_out = ready == 0;
      break;
    }
    const ssize_t n = ::read(out.fds[0], buf, sizeof(buf));
    if (n <= 0) break;
    response.append(buf, static_cast<std::size_t>(n));
  }
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) fail(ErrorCode::annotator_failure, "annotator timed out");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    fail(ErrorCode::annotator_failure, "annotator exited abnormally");
  }
  return response;
}

}  // namespace docfocus
