// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace conductor::plan {

/// Verbatim query text.
struct Literal {
  std::string text;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// The bare word `context`: the dialogue (optionally enriched) is the query.
struct ContextRef {
  friend bool operator==(const ContextRef&, const ContextRef&) = default;
};

/// Reference to an earlier step's output, e.g. `#So1` has name "So1".
struct VarRef {
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

using QuerySegment = std::variant<Literal, ContextRef, VarRef>;

struct QuerySpec {
  std::vector<QuerySegment> parts;
  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

struct SourcePlanStep {
  std::string description;
  std::string source_name;
  std::string output_var;
  QuerySpec query;
  friend bool operator==(const SourcePlanStep&, const SourcePlanStep&) = default;
};

struct SourcePlanProgram {
  std::string sigil;
  std::vector<SourcePlanStep> steps;
  friend bool operator==(const SourcePlanProgram&, const SourcePlanProgram&) = default;
};

struct StrategyPlanStep {
  std::string strategy_name;
  std::string fragment;
  friend bool operator==(const StrategyPlanStep&, const StrategyPlanStep&) = default;
};

struct StrategyPlan {
  std::vector<StrategyPlanStep> steps;
  friend bool operator==(const StrategyPlan&, const StrategyPlan&) = default;
};

/// Ordered module (or strategy) names emitted by a policy-style planner.
struct ModulePlan {
  std::vector<std::string> modules;
  friend bool operator==(const ModulePlan&, const ModulePlan&) = default;
};

struct ToolCall {
  std::string name;
  std::string argument;
  friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

struct StrategyCall {
  std::string name;
  friend bool operator==(const StrategyCall&, const StrategyCall&) = default;
};

struct Finish {
  std::string response;
  friend bool operator==(const Finish&, const Finish&) = default;
};

using ReActAction = std::variant<ToolCall, StrategyCall, Finish>;

struct ReActStep {
  std::string thought;
  ReActAction action;
  /// Observation appended after the action; empty for Finish.
  std::string observation;
  friend bool operator==(const ReActStep&, const ReActStep&) = default;
};

struct ReActTrace {
  std::vector<ReActStep> steps;
  friend bool operator==(const ReActTrace&, const ReActTrace&) = default;
};

using PlanProgram = std::variant<SourcePlanProgram, StrategyPlan, ModulePlan, ReActTrace>;

/// Strategy names in plan order, for the distribution analysis. Source plans
/// yield their source names; ReAct traces skip the final Response action.
std::vector<std::string> plan_labels(const PlanProgram& program);

}  // namespace conductor::plan
