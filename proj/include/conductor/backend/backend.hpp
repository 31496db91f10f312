// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/types.hpp"

namespace conductor::backend {

inline constexpr std::string_view kDefaultModel = "gpt-3.5-turbo";
inline constexpr double kDefaultTemperature = 0.0;
inline constexpr double kDefaultTopP = 0.1;

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct CompletionRequest {
  std::vector<ChatMessage> messages;
  std::string model_id = std::string(kDefaultModel);
  double temperature = kDefaultTemperature;
  double top_p = kDefaultTopP;
  std::optional<int> max_tokens;
  std::vector<std::string> stop;

  /// A single user message carrying `prompt`.
  static CompletionRequest from_prompt(std::string prompt, std::string model_id = std::string(kDefaultModel));

  /// Throws InvalidArgument unless temperature >= 0, 0 < top_p <= 1 and at
  /// least one message is present.
  void validate() const;

  /// Message contents joined by blank lines; the whole prompt for the
  /// single-message form.
  std::string prompt_text() const;
};

struct Generation {
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t latency_ms = 0;
  std::string backend_tag;
  std::string model_id;

  TokenUsage usage() const {
    return {model_id, backend_tag, prompt_tokens, completion_tokens, latency_ms};
  }
};

/// Anything that turns a request into text. Implementations are safe for
/// concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Generation complete(const CompletionRequest& request) = 0;
  virtual std::string tag() const = 0;
};

/// Hex SHA-256 of the canonical JSON form {"messages": [...], "model": ...}.
std::string request_hash(const CompletionRequest& request);
std::string request_hash(std::string_view model_id, std::string_view prompt);

/// Terms plus punctuation marks. Only used when a backend reports no usage.
std::int64_t estimate_tokens(std::string_view text);

/// Replies produced by a callback; used to record fixtures and in tests.
class ScriptedBackend final : public Backend {
 public:
  using Responder = std::function<std::string(const CompletionRequest&)>;

  explicit ScriptedBackend(Responder responder) : responder_(std::move(responder)) {}

  Generation complete(const CompletionRequest& request) override;
  std::string tag() const override { return "scripted"; }

 private:
  Responder responder_;
};

}  // namespace conductor::backend
