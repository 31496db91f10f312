// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/pipelines/pipelines.hpp"

#include <algorithm>

#include "conductor/core/errors.hpp"
#include "conductor/core/render.hpp"
#include "conductor/core/text.hpp"
#include "conductor/data/catalog.hpp"
#include "conductor/plan/grammar.hpp"

namespace conductor::pipelines {
namespace {

constexpr std::string_view kPersonaCorpus = "PERSONA";
constexpr std::string_view kDocumentCorpus = "DOCUMENT";
constexpr std::string_view kAnswerModule = "Answer_Generator";
constexpr std::string_view kResponseAction = "Response";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string trimmed(std::string_view s) { return std::string(text::trim(s)); }

void add_flag(RunRecord& record, std::string_view flag) {
  if (!record.has_flag(flag)) record.flags.emplace_back(flag);
}

const data::ResourceStore& store_of(const MethodConfig& config) {
  return config.resources ? *config.resources : data::ResourceStore::builtin();
}

/// Text after the last "Response:" marker, or nullopt.
std::optional<std::string> after_response_marker(std::string_view text) {
  const auto pos = text.rfind("Response:");
  if (pos == std::string_view::npos) return std::nullopt;
  return trimmed(text.substr(pos + 9));
}

std::string knowledge_body(const EvidenceStore& store) {
  std::vector<std::string> lines;
  for (const auto& b : store.bindings()) {
    if (const auto* e = std::get_if<Evidence>(&b)) lines.push_back(e->source_name + ": " + e->text());
  }
  return text::join(lines, "\n");
}

std::string action_text(const plan::ReActAction& action) {
  return std::visit(Overloaded{[](const plan::ToolCall& c) { return c.name + "[" + c.argument + "]"; },
                               [](const plan::StrategyCall& c) { return c.name; },
                               [](const plan::Finish& f) { return "Finish[" + f.response + "]"; }},
                    action);
}

bool iequals(std::string_view a, std::string_view b) { return text::to_lower_ascii(a) == text::to_lower_ascii(b); }

}  // namespace

void MethodConfig::validate() const {
  if (k_retrieved < 1) throw Error(ErrorKind::InvalidArgument, "k_retrieved must be at least 1");
  if (react_max_steps < 1) throw Error(ErrorKind::InvalidArgument, "react_max_steps must be at least 1");
  if (!store_of(*this).find("templates/" + std::string(to_string(method)) + "_" +
                            std::string(to_string(dataset_kind)) + ".tpl")) {
    throw Error(ErrorKind::MethodNotApplicable,
                std::string(to_string(method)) + " is not defined for " + std::string(to_string(dataset_kind)));
  }
}

std::string MethodConfig::effective_sigil() const {
  if (!sigil.empty()) return sigil;
  return method == Method::Rewoo ? "#E" : "#So";
}

void SourceSet::add(std::unique_ptr<retrieval::Retriever> retriever) {
  std::string name = retriever->source_name();
  retrievers_[std::move(name)] = std::move(retriever);
}

const retrieval::Retriever& SourceSet::get(std::string_view corpus) const {
  const auto it = retrievers_.find(corpus);
  if (it == retrievers_.end()) throw Error(ErrorKind::UnknownTool, "no knowledge source '" + std::string(corpus) + "'");
  return *it->second;
}

bool SourceSet::contains(std::string_view corpus) const { return retrievers_.find(corpus) != retrievers_.end(); }

SourceSet build_sources(const data::Sample& sample, const retrieval::RetrieverFactory& factory) {
  SourceSet sources;
  if (sample.persona_candidates) {
    sources.add(factory(retrieval::Corpus::from_texts(std::string(kPersonaCorpus), *sample.persona_candidates)));
  }
  if (sample.document_candidates) {
    sources.add(factory(retrieval::Corpus::from_texts(std::string(kDocumentCorpus), *sample.document_candidates)));
  }
  return sources;
}

namespace {

const ConceptualTool& resolve_tool(const ToolSet& toolset, std::string_view name) {
  const auto* tool = toolset.find(name);
  if (tool == nullptr || tool->kind != ToolKind::Source) {
    throw Error(ErrorKind::UnknownTool, "'" + std::string(name) + "' is not a knowledge source");
  }
  return *tool;
}

Evidence retrieve(const SourceSet& sources, const ConceptualTool& tool, std::string variable, std::string query,
                  std::size_t k) {
  Evidence e;
  e.variable = std::move(variable);
  e.source_name = tool.corpus_name();
  e.passages = sources.get(e.source_name).retrieve(query, k);
  e.resolved_query = std::move(query);
  return e;
}

}  // namespace

EvidenceStore execute_source_plan(const plan::SourcePlanProgram& program, std::string_view context_text,
                                  const SourceSet& sources, const ToolSet& toolset, std::size_t k) {
  plan::validate_source_plan(program, toolset);
  EvidenceStore store;
  for (const auto& step : program.steps) {
    const auto& tool = resolve_tool(toolset, step.source_name);
    std::string query = plan::substitute_vars(step.query, store, context_text);
    store.bind(retrieve(sources, tool, step.output_var, std::move(query), k));
  }
  return store;
}

std::string combine_middle(std::span<const std::string> fragments) {
  if (fragments.empty()) throw Error(ErrorKind::EmptyPlan, "no fragments to combine");
  std::string out;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += fragments[i];
  }
  return out;
}

std::string react_observation(const plan::ReActAction& action, std::string_view context_text,
                              const SourceSet& sources, const ToolSet& toolset, std::size_t k) {
  const auto* call = std::get_if<plan::ToolCall>(&action);
  if (call == nullptr) throw Error(ErrorKind::InvalidArgument, "only tool calls have retrieval observations");
  const auto& tool = resolve_tool(toolset, call->name);
  const std::string arg = trimmed(call->argument);
  const std::string query = arg == "context" ? std::string(context_text) : arg;
  return retrieve(sources, tool, "", query, k).text();
}

struct MethodRunner::State {
  const data::Sample& sample;
  backend::Backend& backend;
  SourceSet sources;
  std::string dialogue;
  RunRecord record;

  std::string context_query() const { return dialogue; }
};

MethodRunner::MethodRunner(MethodConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto& store = store_of(config_);
  toolset_ = config_.toolset ? *config_.toolset : data::default_toolset(config_.method, config_.dataset_kind, store);
  template_ = data::load_template(config_.method, config_.dataset_kind, store);
  demos_ = data::select_demonstrations(config_.dataset_kind, config_.method, config_.demo_count, store);
  if (!config_.demo_ids.empty()) {
    std::vector<Demonstration> picked;
    for (const auto& id : config_.demo_ids) {
      const auto it = std::find_if(demos_.begin(), demos_.end(), [&](const Demonstration& d) { return d.id == id; });
      if (it == demos_.end()) throw Error(ErrorKind::InvalidArgument, "unknown demonstration id '" + id + "'");
      picked.push_back(*it);
    }
    demos_ = std::move(picked);
  }
  if (config_.method == Method::Chameleon && !is_source_kind(config_.dataset_kind)) {
    for (const auto& tool : toolset_.tools()) {
      module_demos_[tool.name] = data::select_module_demonstrations(config_.dataset_kind, tool.name, store);
    }
  }
}

std::string MethodRunner::toolset_doc() const {
  return render_toolset(toolset_, ToolDocOptions{config_.include_tool_descriptions, config_.include_tool_examples});
}

namespace {

struct Call {
  std::string prompt;
  bool few_shot = false;
  std::vector<std::string> extra_stop;
};

std::string complete(RunRecord& record, backend::Backend& backend, const MethodConfig& config, const Call& call) {
  auto request = backend::CompletionRequest::from_prompt(call.prompt, config.model_id);
  request.max_tokens = config.max_tokens;
  if (call.few_shot) request.stop = config.stop;
  for (const auto& s : call.extra_stop) {
    if (std::find(request.stop.begin(), request.stop.end(), s) == request.stop.end()) request.stop.push_back(s);
  }
  auto gen = backend.complete(request);
  record.usages.push_back(gen.usage());
  return std::move(gen.text);
}

}  // namespace

std::string MethodRunner::think(State& st, const RoleTemplate& role) const {
  PromptRequest req;
  req.demos = demos_;
  req.dialogue_text = st.dialogue;
  const std::string prompt = build_prompt(role, req);
  const std::string thought = trimmed(complete(st.record, st.backend, config_, {prompt, !demos_.empty(), {}}));
  st.record.thought = Thought{thought};
  return thought;
}

void MethodRunner::run_tpe_sources(State& st) const {
  const bool need_thought =
      config_.include_thought_in_planner || config_.include_thought_in_executor || config_.enrich_query_with_thought;
  std::string thought;
  if (need_thought) thought = think(st, template_.role("thinker"));

  PromptRequest plan_req;
  plan_req.toolset_doc = toolset_doc();
  plan_req.demos = demos_;
  plan_req.demo_fields.thought = config_.include_thought_in_planner;
  plan_req.dialogue_text = st.dialogue;
  if (config_.include_thought_in_planner) plan_req.slots["thought"] = thought;
  const auto& planner = template_.role("planner");
  const std::string generated =
      complete(st.record, st.backend, config_, {build_prompt(planner, plan_req), !demos_.empty(), {}});
  st.record.raw_plan_text = planner.cue + generated;

  try {
    const auto program = plan::parse_source_plan(st.record.raw_plan_text, config_.effective_sigil());
    st.record.parsed_plan = program;
    const std::string context =
        config_.enrich_query_with_thought && !thought.empty()
            ? retrieval::enrich_query(st.context_query(), thought)
            : st.context_query();
    st.record.evidence = execute_source_plan(program, context, st.sources, toolset_, config_.k_retrieved);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError && e.kind() != ErrorKind::DanglingReference &&
        e.kind() != ErrorKind::UnknownTool && e.kind() != ErrorKind::UnboundVariable) {
      throw;
    }
    add_flag(st.record, kFlagPlanParseFailure);
    st.record.parsed_plan.reset();
    st.record.evidence = {};
    st.record.response = trimmed(generated);
    return;
  }

  const auto& executor = template_.role("executor");
  PromptRequest exec_req;
  exec_req.dialogue_text = st.dialogue;
  if (!st.record.evidence.empty()) exec_req.extras.push_back({executor.extras_label, knowledge_body(st.record.evidence)});
  if (config_.include_thought_in_executor) exec_req.slots["thought"] = thought;
  st.record.response = trimmed(complete(st.record, st.backend, config_, {build_prompt(executor, exec_req), false, {}}));
}

void MethodRunner::run_tpe_strategies(State& st) const {
  std::string thought;
  if (config_.include_thought_in_planner) thought = think(st, template_.role("thinker"));

  const auto& merged = template_.role("merged");
  PromptRequest req;
  req.toolset_doc = toolset_doc();
  req.demos = demos_;
  req.demo_fields.thought = config_.include_thought_in_planner;
  req.dialogue_text = st.dialogue;
  if (config_.include_thought_in_planner) req.slots["thought"] = thought;
  const std::string generated = complete(st.record, st.backend, config_, {build_prompt(merged, req), !demos_.empty(), {}});
  st.record.raw_plan_text = merged.cue + generated;

  plan::StrategyPlan parsed;
  try {
    parsed = plan::parse_strategy_plan(st.record.raw_plan_text);
  } catch (const ParseError&) {
    add_flag(st.record, kFlagPlanParseFailure);
    st.record.response = trimmed(generated);
    return;
  }
  if (!plan::unknown_strategies(parsed, toolset_).empty()) add_flag(st.record, kFlagUnknownStrategy);
  std::vector<std::string> fragments;
  for (std::size_t i = 0; i < parsed.steps.size(); ++i) {
    fragments.push_back(parsed.steps[i].fragment);
    st.record.evidence.bind(Fragment{"St" + std::to_string(i + 1), parsed.steps[i].strategy_name, parsed.steps[i].fragment});
  }
  st.record.parsed_plan = std::move(parsed);
  st.record.response = combine_middle(fragments);
}

void MethodRunner::run_cot(State& st) const {
  const auto& role = template_.role("cot");
  PromptRequest req;
  req.demos = demos_;
  req.dialogue_text = st.dialogue;
  if (is_source_kind(config_.dataset_kind)) {
    // Fixed source order: persona, then document, both queried with the context.
    const std::string query = st.context_query();
    int n = 0;
    for (const auto corpus : {kPersonaCorpus, kDocumentCorpus}) {
      const auto* tool = toolset_.find(corpus);
      if (tool == nullptr) continue;
      st.record.evidence.bind(retrieve(st.sources, *tool, "K" + std::to_string(++n), query, config_.k_retrieved));
    }
    if (!st.record.evidence.empty()) req.extras.push_back({role.extras_label, knowledge_body(st.record.evidence)});
  }
  const std::string generated = complete(st.record, st.backend, config_, {build_prompt(role, req), !demos_.empty(), {}});
  const std::string full = role.cue + generated;
  if (const auto response = after_response_marker(full)) {
    const auto pos = full.rfind("Response:");
    std::string thought(text::trim(std::string_view(full).substr(0, pos)));
    if (thought.starts_with(role.cue)) thought = trimmed(std::string_view(thought).substr(role.cue.size()));
    if (!thought.empty()) st.record.thought = Thought{thought};
    st.record.response = *response;
  } else {
    add_flag(st.record, kFlagPlanParseFailure);
    st.record.response = trimmed(generated);
  }
}

void MethodRunner::run_cuecot(State& st) const {
  const auto& status_role = template_.role("status");
  PromptRequest status_req;
  status_req.demos = demos_;
  status_req.demo_fields.response = false;
  status_req.dialogue_text = st.dialogue;
  const std::string status =
      trimmed(complete(st.record, st.backend, config_, {build_prompt(status_role, status_req), !demos_.empty(), {}}));
  st.record.thought = Thought{status};

  const auto& respond = template_.role("respond");
  PromptRequest req;
  req.demos = demos_;
  req.dialogue_text = st.dialogue;
  req.slots["thought"] = status;
  st.record.response = trimmed(complete(st.record, st.backend, config_, {build_prompt(respond, req), !demos_.empty(), {}}));
}

void MethodRunner::run_react(State& st) const {
  const auto& role = template_.role("react");
  const bool strategies = !is_source_kind(config_.dataset_kind);
  std::vector<std::string> scratch;
  plan::ReActTrace trace;
  std::string last_generation;
  int calls = 0;
  int observation_index = 0;

  auto prompt_with = [&](std::string_view cue) {
    PromptRequest req;
    req.demos = demos_;
    req.dialogue_text = st.dialogue;
    req.slots["scratchpad"] = text::join(scratch, "\n");
    req.slots["cue"] = std::string(cue);
    return build_prompt(role, req);
  };
  auto finish = [&](std::string response) {
    st.record.raw_plan_text = text::join(scratch, "\n");
    st.record.parsed_plan = trace;
    st.record.response = std::move(response);
  };

  while (calls < config_.react_max_steps) {
    ++calls;
    last_generation = complete(st.record, st.backend, config_,
                               {prompt_with("Thought:"), !demos_.empty(), {"Observation:"}});
    plan::ReActStep step;
    try {
      step = plan::parse_react_step("Thought: " + trimmed(last_generation));
    } catch (const ParseError&) {
      add_flag(st.record, kFlagPlanParseFailure);
      scratch.push_back("Thought: " + trimmed(last_generation));
      finish(trimmed(last_generation));
      return;
    }
    scratch.push_back("Thought: " + step.thought);
    scratch.push_back("Action: " + action_text(step.action));

    if (const auto* fin = std::get_if<plan::Finish>(&step.action)) {
      trace.steps.push_back(step);
      finish(trimmed(fin->response));
      return;
    }

    std::optional<std::string> strategy;
    std::string given_fragment;
    if (const auto* sc = std::get_if<plan::StrategyCall>(&step.action)) {
      strategy = sc->name;
    } else if (const auto* tc = std::get_if<plan::ToolCall>(&step.action); strategies && tc) {
      strategy = tc->name;
      given_fragment = trimmed(tc->argument);
    }

    if (strategy && strategies && iequals(*strategy, kResponseAction)) {
      trace.steps.push_back(step);
      const std::string response = trimmed(complete(st.record, st.backend, config_,
                                                    {prompt_with("Response:"), !demos_.empty(), {}}));
      finish(response);
      return;
    }

    if (strategy && strategies) {
      const auto* tool = toolset_.find(*strategy);
      if (tool == nullptr) add_flag(st.record, kFlagUnknownStrategy);
      std::string fragment = given_fragment;
      if (fragment.empty()) {
        if (calls >= config_.react_max_steps) break;
        ++calls;
        fragment = trimmed(complete(st.record, st.backend, config_,
                                    {prompt_with("Observation:"), !demos_.empty(), {"Thought:", "Action:"}}));
      }
      step.observation = fragment;
      st.record.evidence.bind(
          Fragment{"Ob" + std::to_string(++observation_index), tool ? tool->name : *strategy, fragment});
    } else if (strategy) {
      add_flag(st.record, kFlagUnknownTool);
      step.observation = "Invalid action: " + *strategy + " is not available.";
    } else {
      const auto& call = std::get<plan::ToolCall>(step.action);
      try {
        const auto& tool = resolve_tool(toolset_, call.name);
        const std::string arg = trimmed(call.argument);
        Evidence e = retrieve(st.sources, tool, "Ob" + std::to_string(++observation_index),
                              arg == "context" ? st.context_query() : arg, config_.k_retrieved);
        step.observation = e.text();
        st.record.evidence.bind(std::move(e));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnknownTool) throw;
        add_flag(st.record, kFlagUnknownTool);
        step.observation = "Invalid action: " + call.name + " is not available.";
      }
    }
    scratch.push_back("Observation: " + step.observation);
    trace.steps.push_back(std::move(step));
  }

  add_flag(st.record, kFlagFallbackExhausted);
  finish(trimmed(last_generation));
}

void MethodRunner::run_rewoo(State& st) const {
  const auto& planner = template_.role("planner");
  PromptRequest plan_req;
  plan_req.toolset_doc = toolset_doc();
  plan_req.demos = demos_;
  plan_req.dialogue_text = st.dialogue;
  const std::string generated =
      complete(st.record, st.backend, config_, {build_prompt(planner, plan_req), !demos_.empty(), {}});
  st.record.raw_plan_text = generated;

  plan::SourcePlanProgram program;
  try {
    program = plan::parse_source_plan(generated, config_.effective_sigil());
    st.record.evidence = execute_source_plan(program, st.context_query(), st.sources, toolset_, config_.k_retrieved);
    st.record.parsed_plan = program;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError && e.kind() != ErrorKind::DanglingReference &&
        e.kind() != ErrorKind::UnknownTool && e.kind() != ErrorKind::UnboundVariable) {
      throw;
    }
    add_flag(st.record, kFlagPlanParseFailure);
    st.record.evidence = {};
    st.record.response = trimmed(generated);
    return;
  }

  std::vector<std::string> blocks;
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    const auto& step = program.steps[i];
    const auto& e = std::get<Evidence>(st.record.evidence.bindings()[i]);
    blocks.push_back("Plan: " + step.description + "\n" + program.sigil + step.output_var.substr(plan::sigil_name(program.sigil).size()) +
                     " = " + step.source_name + "[" + e.resolved_query + "]\nEvidence: " + e.text());
  }
  const auto& solver = template_.role("solver");
  PromptRequest req;
  req.dialogue_text = st.dialogue;
  req.extras.push_back({solver.extras_label, text::join(blocks, "\n")});
  st.record.response = trimmed(complete(st.record, st.backend, config_, {build_prompt(solver, req), false, {}}));
}

void MethodRunner::run_chameleon_sources(State& st) const {
  const auto& planner = template_.role("planner");
  PromptRequest plan_req;
  plan_req.toolset_doc = toolset_doc();
  plan_req.demos = demos_;
  plan_req.dialogue_text = st.dialogue;
  const std::string generated =
      complete(st.record, st.backend, config_, {build_prompt(planner, plan_req), !demos_.empty(), {}});
  st.record.raw_plan_text = planner.cue + generated;

  std::vector<const ConceptualTool*> retrievals;
  try {
    const auto modules = plan::parse_module_list(st.record.raw_plan_text);
    for (const auto& name : modules.modules) {
      const auto* tool = toolset_.find(name);
      if (tool == nullptr) {
        add_flag(st.record, kFlagUnknownModule);
      } else if (tool->name != kAnswerModule) {
        retrievals.push_back(tool);
      }
    }
    st.record.parsed_plan = modules;
  } catch (const ParseError&) {
    add_flag(st.record, kFlagPlanParseFailure);
  }
  if (retrievals.empty()) {
    add_flag(st.record, kFlagDefaultSourceOrder);
    for (const auto corpus : {kPersonaCorpus, kDocumentCorpus}) {
      for (const auto& tool : toolset_.tools()) {
        if (tool.name != kAnswerModule && tool.corpus_name() == corpus) retrievals.push_back(&tool);
      }
    }
  }
  for (std::size_t i = 0; i < retrievals.size(); ++i) {
    st.record.evidence.bind(
        retrieve(st.sources, *retrievals[i], "M" + std::to_string(i + 1), st.context_query(), config_.k_retrieved));
  }

  const auto& answer = template_.role("answer");
  PromptRequest req;
  req.dialogue_text = st.dialogue;
  if (!st.record.evidence.empty()) req.extras.push_back({answer.extras_label, knowledge_body(st.record.evidence)});
  st.record.response = trimmed(complete(st.record, st.backend, config_, {build_prompt(answer, req), false, {}}));
}

void MethodRunner::run_chameleon_strategies(State& st) const {
  const auto& planner = template_.role("planner");
  PromptRequest plan_req;
  plan_req.toolset_doc = toolset_doc();
  plan_req.demos = demos_;
  plan_req.dialogue_text = st.dialogue;
  const std::string generated =
      complete(st.record, st.backend, config_, {build_prompt(planner, plan_req), !demos_.empty(), {}});
  st.record.raw_plan_text = planner.cue + generated;

  plan::ModulePlan modules;
  try {
    modules = plan::parse_module_list(st.record.raw_plan_text);
  } catch (const ParseError&) {
    add_flag(st.record, kFlagPlanParseFailure);
  }
  if (modules.modules.empty()) {
    add_flag(st.record, kFlagPlanParseFailure);
    st.record.response = trimmed(generated);
    return;
  }
  st.record.parsed_plan = modules;

  const auto& module_role = template_.role("module");
  std::vector<std::string> fragments;
  for (std::size_t i = 0; i < modules.modules.size(); ++i) {
    const auto* tool = toolset_.find(modules.modules[i]);
    if (tool == nullptr) add_flag(st.record, kFlagUnknownModule);
    const std::string name = tool ? tool->name : modules.modules[i];
    PromptRequest req;
    if (const auto it = module_demos_.find(name); it != module_demos_.end()) req.demos = it->second;
    req.demo_slots["strategy"] = name;
    req.slots["strategy"] = name;
    req.dialogue_text = st.dialogue;
    std::string fragment =
        trimmed(complete(st.record, st.backend, config_, {build_prompt(module_role, req), !req.demos.empty(), {}}));
    st.record.evidence.bind(Fragment{"St" + std::to_string(i + 1), name, fragment});
    fragments.push_back(std::move(fragment));
  }
  st.record.response = combine_middle(fragments);
}

RunRecord MethodRunner::run(const data::Sample& sample, backend::Backend& backend,
                            const retrieval::RetrieverFactory& factory) const {
  State st{sample, backend, {}, {}, {}};
  st.record.sample_id = sample.id;
  st.record.method = config_.method;
  st.record.dataset_kind = config_.dataset_kind;
  try {
    if (sample.dialogue.schema_kind() != config_.dataset_kind) {
      throw Error(ErrorKind::InvalidArgument, "sample '" + sample.id + "' is " +
                                                  std::string(to_string(sample.dialogue.schema_kind())) +
                                                  ", expected " + std::string(to_string(config_.dataset_kind)));
    }
    st.dialogue = render_dialogue(sample.dialogue);
    if (is_source_kind(config_.dataset_kind)) st.sources = build_sources(sample, factory);
    const bool sources = is_source_kind(config_.dataset_kind);
    switch (config_.method) {
      case Method::Tpe:
        sources ? run_tpe_sources(st) : run_tpe_strategies(st);
        break;
      case Method::Cot:
        run_cot(st);
        break;
      case Method::CueCot:
        run_cuecot(st);
        break;
      case Method::React:
        run_react(st);
        break;
      case Method::Rewoo:
        run_rewoo(st);
        break;
      case Method::Chameleon:
        sources ? run_chameleon_sources(st) : run_chameleon_strategies(st);
        break;
    }
  } catch (const Error& e) {
    st.record.error = RecordError{e.kind(), e.what()};
  } catch (const std::exception& e) {
    st.record.error = RecordError{ErrorKind::InvalidArgument, e.what()};
  }
  try {
    st.record.cost_usd = backend::compute_cost(st.record.usages, config_.prices);
  } catch (const Error& e) {
    if (!st.record.error) st.record.error = RecordError{e.kind(), e.what()};
  }
  return std::move(st.record);
}

RunRecord run_method(const data::Sample& sample, const MethodConfig& config, backend::Backend& backend,
                     const retrieval::RetrieverFactory& factory) {
  return MethodRunner(config).run(sample, backend, factory);
}

std::vector<RunRecord> run_batch_serial(std::span<const data::Sample> samples, const MethodConfig& config,
                                        backend::Backend& backend, const retrieval::RetrieverFactory& factory) {
  const MethodRunner runner(config);
  std::vector<RunRecord> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(runner.run(s, backend, factory));
  return out;
}

std::vector<RunRecord> run_batch(std::span<const data::Sample> samples, const MethodConfig& config,
                                 backend::Backend& backend, const retrieval::RetrieverFactory& factory,
                                 int parallelism) {
  if (parallelism < 1) throw Error(ErrorKind::InvalidArgument, "parallelism must be at least 1");
  const MethodRunner runner(config);
  std::vector<RunRecord> out(samples.size());
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic) num_threads(parallelism)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = runner.run(samples[static_cast<std::size_t>(i)], backend, factory);
  }
  return out;
}

}  // namespace conductor::pipelines
