// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/core/types.hpp"

#include <algorithm>
#include <cctype>

#include "conductor/core/text.hpp"

namespace conductor {

std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Focus: return "focus";
    case DatasetKind::Cima: return "cima";
    case DatasetKind::PsyQA: return "psyqa";
  }
  return "unknown";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) {
  const std::string lower = text::to_lower_ascii(name);
  if (lower == "focus") return DatasetKind::Focus;
  if (lower == "cima") return DatasetKind::Cima;
  if (lower == "psyqa") return DatasetKind::PsyQA;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Tpe: return "tpe";
    case Method::Cot: return "cot";
    case Method::React: return "react";
    case Method::Rewoo: return "rewoo";
    case Method::Chameleon: return "chameleon";
    case Method::CueCot: return "cuecot";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  const std::string lower = text::to_lower_ascii(name);
  if (lower == "tpe") return Method::Tpe;
  if (lower == "cot") return Method::Cot;
  if (lower == "react") return Method::React;
  if (lower == "rewoo") return Method::Rewoo;
  if (lower == "chameleon") return Method::Chameleon;
  if (lower == "cuecot" || lower == "cue-cot") return Method::CueCot;
  return std::nullopt;
}

std::string_view to_string(ToolKind kind) {
  return kind == ToolKind::Source ? "SOURCE" : "STRATEGY";
}

std::optional<Role> RoleStyle::role_of(std::string_view label) const {
  if (label == user) return Role::User;
  if (label == system) return Role::System;
  return std::nullopt;
}

RoleStyle default_role_style(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Focus: return {"USER", "SYSTEM"};
    case DatasetKind::Cima: return {"Student", "Teacher"};
    case DatasetKind::PsyQA: return {"Seeker", "Counselor"};
  }
  return {"USER", "SYSTEM"};
}

Dialogue::Dialogue(std::string id, DatasetKind kind, std::vector<Utterance> utterances)
    : id_(std::move(id)), kind_(kind), utterances_(std::move(utterances)) {
  if (utterances_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "dialogue '" + id_ + "' has no utterances");
  }
  for (std::size_t i = 0; i < utterances_.size(); ++i) {
    if (text::trim(utterances_[i].text).empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "dialogue '" + id_ + "' utterance " + std::to_string(i) + " is blank");
    }
  }
  if (utterances_.back().speaker != Role::User) {
    throw Error(ErrorKind::InvalidArgument,
                "dialogue '" + id_ + "' must end with a user-side utterance");
  }
}

ToolSet::ToolSet(ToolKind kind, std::vector<ConceptualTool> tools)
    : kind_(kind), tools_(std::move(tools)) {
  for (std::size_t i = 0; i < tools_.size(); ++i) {
    const auto& tool = tools_[i];
    if (tool.kind != kind_) {
      throw Error(ErrorKind::InvalidArgument, "tool '" + tool.name + "' has the wrong kind for this set");
    }
    if (tool.name.empty()) throw Error(ErrorKind::InvalidArgument, "tool with empty name");
    if (text::trim(tool.description).empty()) {
      throw Error(ErrorKind::InvalidArgument, "tool '" + tool.name + "' has an empty description");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (tools_[j].name == tool.name) {
        throw Error(ErrorKind::InvalidArgument, "duplicate tool name '" + tool.name + "'");
      }
    }
  }
}

const ConceptualTool* ToolSet::find(std::string_view name) const {
  const std::string wanted = text::to_lower_ascii(text::trim(name));
  for (const auto& tool : tools_) {
    if (text::to_lower_ascii(tool.name) == wanted) return &tool;
  }
  for (const auto& tool : tools_) {
    for (const auto& alias : tool.aliases) {
      if (text::to_lower_ascii(alias) == wanted) return &tool;
    }
  }
  return nullptr;
}

std::string Evidence::text() const {
  std::string out;
  for (const auto& p : passages) {
    if (!out.empty()) out.push_back(' ');
    out += p.text;
  }
  return out;
}

const std::string& binding_variable(const Binding& binding) {
  return std::visit([](const auto& b) -> const std::string& { return b.variable; }, binding);
}

std::string binding_text(const Binding& binding) {
  if (const auto* e = std::get_if<Evidence>(&binding)) return e->text();
  return std::get<Fragment>(binding).text;
}

void EvidenceStore::bind(Binding binding) {
  const std::string& name = binding_variable(binding);
  if (find(name) != nullptr) {
    throw Error(ErrorKind::InvalidArgument, "variable '" + name + "' is already bound");
  }
  bindings_.push_back(std::move(binding));
}

const Binding* EvidenceStore::find(std::string_view variable) const {
  for (const auto& b : bindings_) {
    if (binding_variable(b) == variable) return &b;
  }
  return nullptr;
}

bool RunRecord::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

}  // namespace conductor
