// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conductor/core/decimal.hpp"
#include "conductor/core/errors.hpp"
#include "conductor/plan/program.hpp"

namespace conductor {

enum class DatasetKind { Focus, Cima, PsyQA };

std::string_view to_string(DatasetKind kind);
std::optional<DatasetKind> parse_dataset_kind(std::string_view name);

/// Multi-source datasets plan over knowledge sources; the rest over strategies.
inline bool is_source_kind(DatasetKind kind) { return kind == DatasetKind::Focus; }

enum class Method { Tpe, Cot, React, Rewoo, Chameleon, CueCot };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

enum class Role { User, System };

/// Printed labels for the two sides of a dialogue.
struct RoleStyle {
  std::string user;
  std::string system;

  const std::string& label(Role role) const { return role == Role::User ? user : system; }
  std::optional<Role> role_of(std::string_view label) const;
};

/// FOCUS: USER/SYSTEM, CIMA: Student/Teacher, PSYQA: Seeker/Counselor.
RoleStyle default_role_style(DatasetKind kind);

struct Utterance {
  Role speaker;
  std::string text;
  friend bool operator==(const Utterance&, const Utterance&) = default;
};

/// An ordered, validated dialogue context. The last turn always belongs to
/// the user side: the system is expected to answer next.
class Dialogue {
 public:
  /// Throws InvalidArgument when empty, when any text is blank, or when the
  /// final speaker is not the user.
  Dialogue(std::string id, DatasetKind kind, std::vector<Utterance> utterances);

  const std::string& id() const { return id_; }
  DatasetKind schema_kind() const { return kind_; }
  const std::vector<Utterance>& utterances() const { return utterances_; }

  friend bool operator==(const Dialogue&, const Dialogue&) = default;

 private:
  std::string id_;
  DatasetKind kind_;
  std::vector<Utterance> utterances_;
};

enum class ToolKind { Source, Strategy };

std::string_view to_string(ToolKind kind);

struct ToolExample {
  std::string input;
  std::string output;
  friend bool operator==(const ToolExample&, const ToolExample&) = default;
};

struct ConceptualTool {
  std::string name;
  std::string description;
  std::vector<ToolExample> examples;
  ToolKind kind = ToolKind::Source;
  /// Corpus a source tool reads from; empty means the tool's own name.
  std::string corpus;
  /// Alternative spellings accepted when resolving planner output.
  std::vector<std::string> aliases;

  const std::string& corpus_name() const { return corpus.empty() ? name : corpus; }
};

/// Registry of conceptual tools of one kind, in documentation order.
class ToolSet {
 public:
  ToolSet() = default;
  /// Throws InvalidArgument on mixed kinds, duplicate names or empty
  /// descriptions.
  ToolSet(ToolKind kind, std::vector<ConceptualTool> tools);

  ToolKind kind() const { return kind_; }
  const std::vector<ConceptualTool>& tools() const { return tools_; }
  bool empty() const { return tools_.empty(); }

  /// Case-insensitive lookup by name, then by alias.
  const ConceptualTool* find(std::string_view name) const;

 private:
  ToolKind kind_ = ToolKind::Source;
  std::vector<ConceptualTool> tools_;
};

enum class PersonaRole { Thinker, Planner, Executor, MergedPlannerExecutor };

struct PersonaSpec {
  PersonaRole role;
  std::string persona_text;
};

struct Demonstration {
  std::string id;
  std::string dialogue_text;
  std::optional<std::string> thought_text;
  std::optional<std::string> plan_text;
  std::optional<std::string> response_text;
  std::string method_tag;
};

struct Thought {
  std::string text;
  friend bool operator==(const Thought&, const Thought&) = default;
};

struct Passage {
  std::string doc_id;
  std::string text;
  double score = 0.0;
  friend bool operator==(const Passage&, const Passage&) = default;
};

/// Retrieval result bound to a plan variable.
struct Evidence {
  std::string variable;
  std::string source_name;
  std::string resolved_query;
  std::vector<Passage> passages;

  /// Passage texts joined by single spaces.
  std::string text() const;
  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Generated piece of a response bound to a plan variable (strategy plans).
struct Fragment {
  std::string variable;
  std::string strategy;
  std::string text;
  friend bool operator==(const Fragment&, const Fragment&) = default;
};

using Binding = std::variant<Evidence, Fragment>;

const std::string& binding_variable(const Binding& binding);
std::string binding_text(const Binding& binding);

/// Insertion-ordered map from plan variable to its result.
class EvidenceStore {
 public:
  /// Throws InvalidArgument if the variable is already bound.
  void bind(Binding binding);

  const Binding* find(std::string_view variable) const;
  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const EvidenceStore&, const EvidenceStore&) = default;

 private:
  std::vector<Binding> bindings_;
};

struct TokenUsage {
  std::string model_id;
  std::string backend_tag;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t latency_ms = 0;

  std::int64_t total_tokens() const { return prompt_tokens + completion_tokens; }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct RecordError {
  ErrorKind kind = ErrorKind::InvalidArgument;
  std::string message;
  friend bool operator==(const RecordError&, const RecordError&) = default;
};

/// Full trace of one sample through one method.
struct RunRecord {
  std::string sample_id;
  Method method = Method::Tpe;
  DatasetKind dataset_kind = DatasetKind::Focus;
  std::optional<Thought> thought;
  std::string raw_plan_text;
  std::optional<plan::PlanProgram> parsed_plan;
  EvidenceStore evidence;
  std::string response;
  std::vector<TokenUsage> usages;
  Usd cost_usd;
  /// Soft conditions that did not prevent a response (e.g. fallbacks).
  std::vector<std::string> flags;
  std::optional<RecordError> error;

  bool has_flag(std::string_view flag) const;
  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

}  // namespace conductor
