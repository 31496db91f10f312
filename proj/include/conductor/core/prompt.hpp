// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/types.hpp"

namespace conductor {

/// A titled block placed between the demonstrations and the target dialogue
/// (retrieved knowledge, plan evidence).
struct LabeledSection {
  std::string label;
  std::string body;
};

/// Everything around the three variable parts of a prompt.
struct PromptLayout {
  std::string toolset_header;
  std::string demo_header;
  std::string dialogue_label = "Dialogue:";
  /// Already-filled lines that follow the target dialogue (e.g. "Thought: ...").
  std::string continuation;
  std::string cue;
};

/// persona, toolset doc, demonstrations, extras, target dialogue,
/// continuation, cue: in that order, separated as documented in
/// docs/prompt_templates.md. Pure and byte-stable.
///
/// Throws MissingSection when the layout names a toolset header but no
/// toolset documentation is supplied.
std::string assemble_prompt(const PersonaSpec& persona,
                            const std::optional<std::string>& toolset_doc,
                            std::span<const std::string> demos,
                            std::string_view dialogue_text,
                            std::span<const LabeledSection> extras,
                            const PromptLayout& layout);

using SlotMap = std::map<std::string, std::string, std::less<>>;

/// Line-oriented slot filling. `{name}` is replaced by its value; a line whose
/// optional slot is missing or empty is dropped. `{name!}` is required and
/// raises MissingSection when absent.
std::string fill_slots(std::string_view pattern, const SlotMap& slots);

struct DemoFields {
  bool thought = true;
  bool plan = true;
  bool response = true;
};

/// Renders a demonstration through a pattern with the slots {dialogue},
/// {thought}, {plan}, {response} plus any `extra` slots.
std::string render_demo(std::string_view pattern, const Demonstration& demo,
                        const DemoFields& fields = {}, const SlotMap& extra = {});

/// One role's share of a template file.
struct RoleTemplate {
  PersonaRole persona_role = PersonaRole::Executor;
  std::string persona;
  std::string toolset_header;
  std::string demo_header;
  std::string demo;
  std::string dialogue_label = "Dialogue:";
  std::string continuation;
  std::string cue;
  /// Label for the evidence block the pipeline places before the dialogue.
  std::string extras_label;

  PersonaSpec persona_spec() const { return {persona_role, persona}; }
};

/// A versioned prompt template file: one per (method, dataset), holding one
/// section group per role.
///
///   # conductor prompt template v1
///   @@ planner.role
///   planner
///   @@ planner.persona
///   ...
class PromptTemplate {
 public:
  static PromptTemplate parse(std::string_view text, std::string name);

  const std::string& name() const { return name_; }
  int version() const { return version_; }
  bool has_role(std::string_view role) const;
  /// Throws MissingSection for unknown roles.
  const RoleTemplate& role(std::string_view role) const;

 private:
  std::string name_;
  int version_ = 1;
  std::map<std::string, RoleTemplate, std::less<>> roles_;
};

struct PromptRequest {
  std::optional<std::string> toolset_doc;
  std::vector<Demonstration> demos;
  DemoFields demo_fields;
  SlotMap demo_slots;
  std::string dialogue_text;
  std::vector<LabeledSection> extras;
  /// Values for the persona, continuation and cue slots.
  SlotMap slots;
};

/// Renders demos and slots through `tpl`, then calls assemble_prompt.
std::string build_prompt(const RoleTemplate& tpl, const PromptRequest& request);

}  // namespace conductor
