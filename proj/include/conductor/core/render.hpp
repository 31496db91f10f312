// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <string>

#include "conductor/core/types.hpp"

namespace conductor {

/// Separator between rendered dialogue turns.
inline constexpr char kTurnSeparator = '\t';

/// "ROLE: text" per utterance, joined by a single tab.
std::string render_dialogue(const Dialogue& dialogue, const RoleStyle& style);
std::string render_dialogue(const Dialogue& dialogue);

struct ToolDocOptions {
  bool include_descriptions = true;
  bool include_examples = false;
};

/// One "- NAME: description" line per tool. Examples, when enabled, follow
/// their tool as indented "Input:"/"Output:" lines.
std::string render_toolset(const ToolSet& toolset, bool include_examples);
std::string render_toolset(const ToolSet& toolset, const ToolDocOptions& options);

}  // namespace conductor
