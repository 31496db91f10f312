// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/types.hpp"
#include "conductor/plan/program.hpp"

// Parsers for planner output. The grammar is documented in
// docs/plan_grammar.md. All parsers are pure; on malformed input they throw
// conductor::ParseError (or DanglingReference for forward/unknown variables)
// and never crash.

namespace conductor::plan {

/// "Plan: <desc>" / "<sigil><n> = SOURCE[<query>]" pairs. A leading Thought
/// block and trailing prose are ignored.
SourcePlanProgram parse_source_plan(std::string_view text, std::string_view sigil);

/// "Plan: <strategy>" / "Do: <fragment>" pairs, order and duplicates kept.
StrategyPlan parse_strategy_plan(std::string_view text);

/// The final Thought and Action lines of a ReAct continuation.
ReActStep parse_react_step(std::string_view text);

/// The quoted list after "Modules:" or "Strategies:".
ModulePlan parse_module_list(std::string_view text);

/// Renders a source program back into the planner's textual format.
std::string render_source_plan(const SourcePlanProgram& program);

/// Resolves a query against bound evidence. Segments are joined by single
/// spaces. Throws UnboundVariable.
std::string substitute_vars(const QuerySpec& query, const EvidenceStore& store,
                            std::string_view context_text);

/// Throws UnknownTool for the first step whose source is not in `toolset`.
void validate_source_plan(const SourcePlanProgram& program, const ToolSet& toolset);

/// Strategy names not present in `toolset`, in plan order. These are kept
/// (models invent combined strategies), not rejected.
std::vector<std::string> unknown_strategies(const StrategyPlan& plan, const ToolSet& toolset);

/// Variable name carried by a sigil: "#So" -> "So".
std::string sigil_name(std::string_view sigil);

}  // namespace conductor::plan
