// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/core/prompt.hpp"

#include <cctype>
#include <charconv>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"

namespace conductor {
namespace {

bool is_slot_char(char c) { return (c >= 'a' && c <= 'z') || c == '_' || (c >= '0' && c <= '9'); }

struct SlotToken {
  std::size_t begin;
  std::size_t end;  // one past '}'
  std::string_view name;
  bool required;
};

std::vector<SlotToken> find_slots(std::string_view line) {
  std::vector<SlotToken> out;
  std::size_t i = 0;
  while ((i = line.find('{', i)) != std::string_view::npos) {
    std::size_t j = i + 1;
    while (j < line.size() && is_slot_char(line[j])) ++j;
    bool required = false;
    if (j < line.size() && line[j] == '!') {
      required = true;
      ++j;
    }
    const std::size_t name_len = (required ? j - 1 : j) - (i + 1);
    if (name_len > 0 && j < line.size() && line[j] == '}') {
      out.push_back({i, j + 1, line.substr(i + 1, name_len), required});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

PersonaRole parse_persona_role(std::string_view name, const std::string& tpl) {
  const std::string v(text::trim(name));
  if (v == "thinker") return PersonaRole::Thinker;
  if (v == "planner") return PersonaRole::Planner;
  if (v == "executor") return PersonaRole::Executor;
  if (v == "merged") return PersonaRole::MergedPlannerExecutor;
  throw Error(ErrorKind::InvalidArgument, "template '" + tpl + "': unknown persona role '" + v + "'");
}

}  // namespace

std::string assemble_prompt(const PersonaSpec& persona,
                            const std::optional<std::string>& toolset_doc,
                            std::span<const std::string> demos,
                            std::string_view dialogue_text,
                            std::span<const LabeledSection> extras,
                            const PromptLayout& layout) {
  if (!layout.toolset_header.empty() && !toolset_doc) {
    throw Error(ErrorKind::MissingSection, "layout requires a toolset section");
  }
  std::string out = persona.persona_text;
  if (toolset_doc) {
    out += "\n\n";
    if (!layout.toolset_header.empty()) {
      out += layout.toolset_header;
      out += '\n';
    }
    out += *toolset_doc;
  }
  if (!demos.empty()) {
    out += "\n\n";
    if (!layout.demo_header.empty()) {
      out += layout.demo_header;
      out += "\n\n";
    }
    for (std::size_t i = 0; i < demos.size(); ++i) {
      if (i > 0) out += "\n\n";
      out += demos[i];
    }
  }
  out += "\n\n";
  for (const auto& extra : extras) {
    out += extra.label;
    out += '\n';
    out += extra.body;
    out += "\n\n";
  }
  out += layout.dialogue_label;
  out += ' ';
  out += dialogue_text;
  out += '\n';
  if (!layout.continuation.empty()) {
    out += layout.continuation;
    out += '\n';
  }
  out += layout.cue;
  return out;
}

std::string fill_slots(std::string_view pattern, const SlotMap& slots) {
  std::vector<std::string> kept;
  for (const auto& line : text::split_lines(pattern)) {
    const auto tokens = find_slots(line.text);
    bool drop = false;
    std::string filled;
    std::size_t cursor = 0;
    for (const auto& tok : tokens) {
      const auto it = slots.find(tok.name);
      const bool present = it != slots.end() && !it->second.empty();
      if (!present) {
        if (tok.required) {
          throw Error(ErrorKind::MissingSection, "slot '" + std::string(tok.name) + "' is required");
        }
        drop = true;
        break;
      }
      filled.append(line.text.substr(cursor, tok.begin - cursor));
      filled += it->second;
      cursor = tok.end;
    }
    if (drop) continue;
    filled.append(line.text.substr(cursor));
    kept.push_back(std::move(filled));
  }
  return text::join(kept, "\n");
}

std::string render_demo(std::string_view pattern, const Demonstration& demo,
                        const DemoFields& fields, const SlotMap& extra) {
  SlotMap slots = extra;
  slots["dialogue"] = demo.dialogue_text;
  if (fields.thought && demo.thought_text) slots["thought"] = *demo.thought_text;
  if (fields.plan && demo.plan_text) slots["plan"] = *demo.plan_text;
  if (fields.response && demo.response_text) slots["response"] = *demo.response_text;
  return fill_slots(pattern, slots);
}

PromptTemplate PromptTemplate::parse(std::string_view text, std::string name) {
  PromptTemplate tpl;
  tpl.name_ = std::move(name);

  std::string current_role;
  std::string current_field;
  std::vector<std::string_view> buffer;

  auto flush = [&] {
    if (current_field.empty()) return;
    while (!buffer.empty() && text::trim(buffer.back()).empty()) buffer.pop_back();
    std::string content;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
      if (i > 0) content.push_back('\n');
      content.append(buffer[i]);
    }
    RoleTemplate& role = tpl.roles_[current_role];
    if (current_field == "role") {
      role.persona_role = parse_persona_role(content, tpl.name_);
    } else if (current_field == "persona") {
      role.persona = std::move(content);
    } else if (current_field == "toolset_header") {
      role.toolset_header = std::move(content);
    } else if (current_field == "demo_header") {
      role.demo_header = std::move(content);
    } else if (current_field == "demo") {
      role.demo = std::move(content);
    } else if (current_field == "dialogue_label") {
      role.dialogue_label = std::move(content);
    } else if (current_field == "continuation") {
      role.continuation = std::move(content);
    } else if (current_field == "cue") {
      role.cue = std::move(content);
    } else if (current_field == "extras_label") {
      role.extras_label = std::move(content);
    } else {
      throw Error(ErrorKind::InvalidArgument,
                  "template '" + tpl.name_ + "': unknown field '" + current_field + "'");
    }
    buffer.clear();
  };

  for (const auto& line : text::split_lines(text)) {
    if (line.text.starts_with("@@ ")) {
      flush();
      const std::string_view key = text::trim(line.text.substr(3));
      const auto dot = key.find('.');
      if (dot == std::string_view::npos || dot == 0 || dot + 1 == key.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "template '" + tpl.name_ + "': malformed section '" + std::string(key) + "'");
      }
      current_role = std::string(key.substr(0, dot));
      current_field = std::string(key.substr(dot + 1));
      tpl.roles_[current_role];
      continue;
    }
    if (current_field.empty()) {
      const std::string_view t = text::trim(line.text);
      if (t.starts_with("# conductor prompt template v")) {
        const std::string_view digits = t.substr(29);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), tpl.version_);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) {
          throw Error(ErrorKind::InvalidArgument, "template '" + tpl.name_ + "': malformed version header");
        }
      } else if (!t.empty() && !t.starts_with("#")) {
        throw Error(ErrorKind::InvalidArgument,
                    "template '" + tpl.name_ + "': text before the first section");
      }
      continue;
    }
    buffer.push_back(line.text);
  }
  flush();
  return tpl;
}

bool PromptTemplate::has_role(std::string_view role) const {
  return roles_.find(role) != roles_.end();
}

const RoleTemplate& PromptTemplate::role(std::string_view role) const {
  const auto it = roles_.find(role);
  if (it == roles_.end()) {
    throw Error(ErrorKind::MissingSection, "template '" + name_ + "' has no role '" + std::string(role) + "'");
  }
  return it->second;
}

std::string build_prompt(const RoleTemplate& tpl, const PromptRequest& request) {
  if (!request.demos.empty() && tpl.demo.empty()) {
    throw Error(ErrorKind::MissingSection, "template has no demonstration pattern");
  }
  std::vector<std::string> demos;
  demos.reserve(request.demos.size());
  for (const auto& d : request.demos) {
    demos.push_back(render_demo(tpl.demo, d, request.demo_fields, request.demo_slots));
  }
  PromptLayout layout;
  layout.toolset_header = tpl.toolset_header;
  layout.demo_header = tpl.demo_header;
  layout.dialogue_label = tpl.dialogue_label;
  layout.continuation = fill_slots(tpl.continuation, request.slots);
  layout.cue = fill_slots(tpl.cue, request.slots);
  PersonaSpec persona = tpl.persona_spec();
  persona.persona_text = fill_slots(persona.persona_text, request.slots);
  return assemble_prompt(persona, request.toolset_doc, demos, request.dialogue_text,
                         request.extras, layout);
}

}  // namespace conductor
