// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/backend/backend.hpp"
#include "conductor/backend/cost.hpp"
#include "conductor/core/prompt.hpp"
#include "conductor/core/types.hpp"
#include "conductor/data/dataset.hpp"
#include "conductor/data/resources.hpp"
#include "conductor/retrieval/bm25.hpp"

namespace conductor::pipelines {

/// Record flags for soft failures.
inline constexpr std::string_view kFlagPlanParseFailure = "PlanParseFailure";
inline constexpr std::string_view kFlagFallbackExhausted = "FallbackExhausted";
inline constexpr std::string_view kFlagUnknownStrategy = "UnknownStrategy";
inline constexpr std::string_view kFlagUnknownModule = "UnknownModule";
inline constexpr std::string_view kFlagUnknownTool = "UnknownTool";
inline constexpr std::string_view kFlagDefaultSourceOrder = "DefaultSourceOrder";

struct MethodConfig {
  Method method = Method::Tpe;
  DatasetKind dataset_kind = DatasetKind::Focus;
  /// Demonstrations to keep, by id and in this order; empty keeps the bank.
  std::vector<std::string> demo_ids;
  /// Truncates the bank (0 is zero-shot).
  std::optional<std::size_t> demo_count;
  /// Replaces the method's default toolset.
  std::optional<ToolSet> toolset;
  std::size_t k_retrieved = 1;
  bool include_thought_in_planner = true;
  bool include_thought_in_executor = true;
  bool include_tool_examples = false;
  bool include_tool_descriptions = true;
  /// Appends the full Thinker output to `context` queries.
  bool enrich_query_with_thought = true;
  int react_max_steps = 8;
  /// Plan variable sigil; empty picks "#So" (TPE) or "#E" (ReWOO).
  std::string sigil;
  std::string model_id = std::string(backend::kDefaultModel);
  std::optional<int> max_tokens;
  /// Applied to every call whose prompt carries demonstrations.
  std::vector<std::string> stop = {"Dialogue:"};
  backend::PriceTable prices = backend::PriceTable::defaults();
  /// Null means the embedded resources.
  std::shared_ptr<const data::ResourceStore> resources;

  /// Throws InvalidArgument on k_retrieved < 1 or react_max_steps < 1 and
  /// MethodNotApplicable for unsupported (method, dataset) pairs.
  void validate() const;
  std::string effective_sigil() const;
};

/// One retriever per knowledge source of a sample, keyed by corpus name.
class SourceSet {
 public:
  void add(std::unique_ptr<retrieval::Retriever> retriever);
  /// Throws UnknownTool when the source is absent.
  const retrieval::Retriever& get(std::string_view corpus) const;
  bool contains(std::string_view corpus) const;

 private:
  std::map<std::string, std::unique_ptr<retrieval::Retriever>, std::less<>> retrievers_;
};

/// PERSONA and DOCUMENT retrievers over a sample's candidates; empty for
/// strategy datasets.
SourceSet build_sources(const data::Sample& sample, const retrieval::RetrieverFactory& factory);

/// Steps in order: query via substitute_vars, top-k from the step's source,
/// bound to its output variable. `toolset` maps plan names and aliases to
/// corpora.
EvidenceStore execute_source_plan(const plan::SourcePlanProgram& program, std::string_view context_text,
                                  const SourceSet& sources, const ToolSet& toolset, std::size_t k);

/// Fragments joined by single spaces. Throws EmptyPlan.
std::string combine_middle(std::span<const std::string> fragments);

/// Retrieval text for a ReAct tool call; "context" resolves to
/// `context_text`. Throws UnknownTool and InvalidArgument for strategy calls.
std::string react_observation(const plan::ReActAction& action, std::string_view context_text,
                              const SourceSet& sources, const ToolSet& toolset, std::size_t k);

/// Loads templates, toolset and demonstrations once for many samples.
class MethodRunner {
 public:
  explicit MethodRunner(MethodConfig config);

  /// Never throws for per-sample failures: they land in RunRecord::error.
  RunRecord run(const data::Sample& sample, backend::Backend& backend,
                const retrieval::RetrieverFactory& factory) const;

  const MethodConfig& config() const { return config_; }
  const ToolSet& toolset() const { return toolset_; }
  const PromptTemplate& prompt_template() const { return template_; }
  const std::vector<Demonstration>& demos() const { return demos_; }

 private:
  struct State;

  void run_tpe_sources(State& st) const;
  void run_tpe_strategies(State& st) const;
  void run_cot(State& st) const;
  void run_cuecot(State& st) const;
  void run_react(State& st) const;
  void run_rewoo(State& st) const;
  void run_chameleon_sources(State& st) const;
  void run_chameleon_strategies(State& st) const;
  std::string think(State& st, const RoleTemplate& role) const;
  std::string toolset_doc() const;

  MethodConfig config_;
  ToolSet toolset_;
  PromptTemplate template_;
  std::vector<Demonstration> demos_;
  std::map<std::string, std::vector<Demonstration>, std::less<>> module_demos_;
};

RunRecord run_method(const data::Sample& sample, const MethodConfig& config, backend::Backend& backend,
                     const retrieval::RetrieverFactory& factory);

/// Records in input order.
std::vector<RunRecord> run_batch_serial(std::span<const data::Sample> samples, const MethodConfig& config,
                                        backend::Backend& backend, const retrieval::RetrieverFactory& factory);
/// OpenMP over samples with at most `parallelism` threads; identical output
/// to the serial reference.
std::vector<RunRecord> run_batch(std::span<const data::Sample> samples, const MethodConfig& config,
                                 backend::Backend& backend, const retrieval::RetrieverFactory& factory,
                                 int parallelism);

}  // namespace conductor::pipelines
