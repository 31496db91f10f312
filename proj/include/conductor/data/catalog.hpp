// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/prompt.hpp"
#include "conductor/core/types.hpp"
#include "conductor/data/resources.hpp"

namespace conductor::data {

/// Whether the shipped resources define `method` for `kind`.
bool method_applicable(Method method, DatasetKind kind);

/// "templates/<method>_<kind>.tpl". Throws MethodNotApplicable.
PromptTemplate load_template(Method method, DatasetKind kind,
                             const ResourceStore& store = ResourceStore::builtin());

/// JSON toolset: {"kind": "SOURCE"|"STRATEGY", "tools": [{"name",
/// "description", "examples": [{"input", "output"}], "corpus", "aliases"}]}.
ToolSet parse_toolset(std::string_view json_text, std::string_view name);
/// "toolsets/<name>.json". Throws IoError.
ToolSet load_toolset(std::string_view name, const ResourceStore& store = ResourceStore::builtin());
/// The toolset a method plans over for a dataset.
ToolSet default_toolset(Method method, DatasetKind kind, const ResourceStore& store = ResourceStore::builtin());

/// JSONL demonstrations: {"id", "dialogue", "thought", "plan", "response",
/// "tag"}. Throws SchemaViolation.
std::vector<Demonstration> parse_demo_bank(std::string_view jsonl, std::string_view method_tag);

/// The fixed bank for (kind, method), truncated to `count` when given.
/// Throws MissingDemoBank.
std::vector<Demonstration> select_demonstrations(DatasetKind kind, Method method,
                                                 std::optional<std::size_t> count = std::nullopt,
                                                 const ResourceStore& store = ResourceStore::builtin());

/// Per-module exemplars of a policy-style planner; the entries whose tag
/// equals `module`. Empty when the bank has none for it.
std::vector<Demonstration> select_module_demonstrations(DatasetKind kind, std::string_view module,
                                                        const ResourceStore& store = ResourceStore::builtin());

}  // namespace conductor::data
