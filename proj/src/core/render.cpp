// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/core/render.hpp"

namespace conductor {

std::string render_dialogue(const Dialogue& dialogue, const RoleStyle& style) {
  std::string out;
  for (const auto& u : dialogue.utterances()) {
    if (!out.empty()) out.push_back(kTurnSeparator);
    out += style.label(u.speaker);
    out += ": ";
    out += u.text;
  }
  return out;
}

std::string render_dialogue(const Dialogue& dialogue) {
  return render_dialogue(dialogue, default_role_style(dialogue.schema_kind()));
}

std::string render_toolset(const ToolSet& toolset, bool include_examples) {
  return render_toolset(toolset, ToolDocOptions{true, include_examples});
}

std::string render_toolset(const ToolSet& toolset, const ToolDocOptions& options) {
  std::string out;
  for (const auto& tool : toolset.tools()) {
    if (!out.empty()) out.push_back('\n');
    out += "- ";
    out += tool.name;
    if (options.include_descriptions) {
      out += ": ";
      out += tool.description;
    }
    if (options.include_examples) {
      for (const auto& ex : tool.examples) {
        out += "\n  Input: ";
        out += ex.input;
        out += "\n  Output: ";
        out += ex.output;
      }
    }
  }
  return out;
}

}  // namespace conductor
