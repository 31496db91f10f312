// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/backend/backend.hpp"

namespace conductor::backend {

/// One canned reply. A rule matches when the prompt ends with `ends_with`,
/// contains every `prompt_contains` string, and its tail (from the last
/// "Dialogue: ") contains every `tail_contains` string.
struct ScriptRule {
  std::vector<std::string> prompt_contains;
  std::vector<std::string> tail_contains;
  std::string ends_with;
  std::string response;
};

/// Rule set for ScriptedBackend. Among matching rules the one with the most
/// conditions wins; ties go to the earlier rule.
class Script {
 public:
  /// {"rules": [{"prompt_contains": [...], "tail_contains": [...],
  ///             "ends_with": "...", "response": "..."}],
  ///  "default": "..."}. Throws SchemaViolation.
  static Script parse(std::string_view json_text);
  static Script load(const std::filesystem::path& path);

  /// Throws ReplayMiss when nothing matches and no default is set.
  std::string respond(std::string_view prompt) const;

  const std::vector<ScriptRule>& rules() const { return rules_; }

 private:
  std::vector<ScriptRule> rules_;
  std::optional<std::string> default_;
};

/// The prompt from its last "Dialogue: " marker on; the whole prompt when
/// absent.
std::string_view prompt_tail(std::string_view prompt);

}  // namespace conductor::backend
