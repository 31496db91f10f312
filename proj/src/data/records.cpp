// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/data/records.hpp"

#include <fstream>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "json.hpp"

namespace conductor::data {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json query_to_json(const plan::QuerySpec& q) {
  json parts = json::array();
  for (const auto& seg : q.parts) {
    std::visit(Overloaded{[&](const plan::Literal& l) { parts.push_back({{"literal", l.text}}); },
                          [&](const plan::ContextRef&) { parts.push_back({{"context", true}}); },
                          [&](const plan::VarRef& v) { parts.push_back({{"var", v.name}}); }},
               seg);
  }
  return parts;
}

plan::QuerySpec query_from_json(const json& j) {
  plan::QuerySpec q;
  for (const auto& p : j) {
    if (p.contains("literal")) {
      q.parts.emplace_back(plan::Literal{p["literal"].get<std::string>()});
    } else if (p.contains("var")) {
      q.parts.emplace_back(plan::VarRef{p["var"].get<std::string>()});
    } else if (p.contains("context")) {
      q.parts.emplace_back(plan::ContextRef{});
    } else {
      throw Error(ErrorKind::SchemaViolation, "unknown query segment");
    }
  }
  return q;
}

json plan_to_json(const plan::PlanProgram& program) {
  return std::visit(
      Overloaded{
          [](const plan::SourcePlanProgram& p) {
            json steps = json::array();
            for (const auto& s : p.steps) {
              steps.push_back({{"description", s.description},
                               {"source", s.source_name},
                               {"output_var", s.output_var},
                               {"query", query_to_json(s.query)}});
            }
            return json{{"type", "source"}, {"sigil", p.sigil}, {"steps", steps}};
          },
          [](const plan::StrategyPlan& p) {
            json steps = json::array();
            for (const auto& s : p.steps) steps.push_back({{"strategy", s.strategy_name}, {"fragment", s.fragment}});
            return json{{"type", "strategy"}, {"steps", steps}};
          },
          [](const plan::ModulePlan& p) { return json{{"type", "modules"}, {"modules", p.modules}}; },
          [](const plan::ReActTrace& t) {
            json steps = json::array();
            for (const auto& s : t.steps) {
              json action = std::visit(
                  Overloaded{[](const plan::ToolCall& c) {
                               return json{{"type", "tool"}, {"name", c.name}, {"argument", c.argument}};
                             },
                             [](const plan::StrategyCall& c) { return json{{"type", "strategy"}, {"name", c.name}}; },
                             [](const plan::Finish& f) { return json{{"type", "finish"}, {"response", f.response}}; }},
                  s.action);
              steps.push_back({{"thought", s.thought}, {"action", action}, {"observation", s.observation}});
            }
            return json{{"type", "react"}, {"steps", steps}};
          }},
      program);
}

plan::PlanProgram plan_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "source") {
    plan::SourcePlanProgram p;
    p.sigil = j.at("sigil").get<std::string>();
    for (const auto& s : j.at("steps")) {
      p.steps.push_back({s.at("description").get<std::string>(), s.at("source").get<std::string>(),
                         s.at("output_var").get<std::string>(), query_from_json(s.at("query"))});
    }
    return p;
  }
  if (type == "strategy") {
    plan::StrategyPlan p;
    for (const auto& s : j.at("steps")) {
      p.steps.push_back({s.at("strategy").get<std::string>(), s.at("fragment").get<std::string>()});
    }
    return p;
  }
  if (type == "modules") return plan::ModulePlan{j.at("modules").get<std::vector<std::string>>()};
  if (type == "react") {
    plan::ReActTrace t;
    for (const auto& s : j.at("steps")) {
      plan::ReActStep step;
      step.thought = s.at("thought").get<std::string>();
      step.observation = s.at("observation").get<std::string>();
      const auto& a = s.at("action");
      const std::string at = a.at("type").get<std::string>();
      if (at == "tool") {
        step.action = plan::ToolCall{a.at("name").get<std::string>(), a.at("argument").get<std::string>()};
      } else if (at == "strategy") {
        step.action = plan::StrategyCall{a.at("name").get<std::string>()};
      } else if (at == "finish") {
        step.action = plan::Finish{a.at("response").get<std::string>()};
      } else {
        throw Error(ErrorKind::SchemaViolation, "unknown action type '" + at + "'");
      }
      t.steps.push_back(std::move(step));
    }
    return t;
  }
  throw Error(ErrorKind::SchemaViolation, "unknown plan type '" + type + "'");
}

json binding_to_json(const Binding& b) {
  return std::visit(Overloaded{[](const Evidence& e) {
                                 json passages = json::array();
                                 for (const auto& p : e.passages) {
                                   passages.push_back({{"doc_id", p.doc_id}, {"text", p.text}, {"score", p.score}});
                                 }
                                 return json{{"type", "evidence"},
                                             {"variable", e.variable},
                                             {"source_name", e.source_name},
                                             {"resolved_query", e.resolved_query},
                                             {"passages", passages}};
                               },
                               [](const Fragment& f) {
                                 return json{{"type", "fragment"},
                                             {"variable", f.variable},
                                             {"strategy", f.strategy},
                                             {"text", f.text}};
                               }},
                    b);
}

Binding binding_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "evidence") {
    Evidence e;
    e.variable = j.at("variable").get<std::string>();
    e.source_name = j.at("source_name").get<std::string>();
    e.resolved_query = j.at("resolved_query").get<std::string>();
    for (const auto& p : j.at("passages")) {
      e.passages.push_back({p.at("doc_id").get<std::string>(), p.at("text").get<std::string>(),
                            p.at("score").get<double>()});
    }
    return e;
  }
  if (type == "fragment") {
    return Fragment{j.at("variable").get<std::string>(), j.at("strategy").get<std::string>(),
                    j.at("text").get<std::string>()};
  }
  throw Error(ErrorKind::SchemaViolation, "unknown binding type '" + type + "'");
}

}  // namespace

std::string record_to_json(const RunRecord& r) {
  json j;
  j["sample_id"] = r.sample_id;
  j["method"] = std::string(to_string(r.method));
  j["dataset_kind"] = std::string(to_string(r.dataset_kind));
  j["thought"] = r.thought ? json(r.thought->text) : json(nullptr);
  j["raw_plan_text"] = r.raw_plan_text;
  j["parsed_plan"] = r.parsed_plan ? plan_to_json(*r.parsed_plan) : json(nullptr);
  json evidence = json::array();
  for (const auto& b : r.evidence.bindings()) evidence.push_back(binding_to_json(b));
  j["evidence"] = std::move(evidence);
  j["response"] = r.response;
  json usages = json::array();
  for (const auto& u : r.usages) {
    usages.push_back({{"model_id", u.model_id},
                      {"backend_tag", u.backend_tag},
                      {"prompt_tokens", u.prompt_tokens},
                      {"completion_tokens", u.completion_tokens},
                      {"latency_ms", u.latency_ms}});
  }
  j["usages"] = std::move(usages);
  j["cost_usd"] = r.cost_usd.to_string(6);
  j["flags"] = r.flags;
  j["error"] = r.error ? json{{"kind", std::string(to_string(r.error->kind))}, {"message", r.error->message}}
                       : json(nullptr);
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

RunRecord record_from_json(std::string_view line) {
  try {
    const json j = json::parse(line);
    RunRecord r;
    r.sample_id = j.at("sample_id").get<std::string>();
    const auto method = parse_method(j.at("method").get<std::string>());
    const auto kind = parse_dataset_kind(j.at("dataset_kind").get<std::string>());
    if (!method || !kind) throw Error(ErrorKind::SchemaViolation, "unknown method or dataset kind");
    r.method = *method;
    r.dataset_kind = *kind;
    if (!j.at("thought").is_null()) r.thought = Thought{j["thought"].get<std::string>()};
    r.raw_plan_text = j.at("raw_plan_text").get<std::string>();
    if (!j.at("parsed_plan").is_null()) r.parsed_plan = plan_from_json(j["parsed_plan"]);
    for (const auto& b : j.at("evidence")) r.evidence.bind(binding_from_json(b));
    r.response = j.at("response").get<std::string>();
    for (const auto& u : j.at("usages")) {
      r.usages.push_back({u.at("model_id").get<std::string>(), u.at("backend_tag").get<std::string>(),
                          u.at("prompt_tokens").get<std::int64_t>(), u.at("completion_tokens").get<std::int64_t>(),
                          u.at("latency_ms").get<std::int64_t>()});
    }
    r.cost_usd = Usd::parse(j.at("cost_usd").get<std::string>());
    r.flags = j.at("flags").get<std::vector<std::string>>();
    if (!j.at("error").is_null()) {
      const auto ek = error_kind_from_string(j["error"].at("kind").get<std::string>());
      if (!ek) throw Error(ErrorKind::SchemaViolation, "unknown error kind");
      r.error = RecordError{*ek, j["error"].at("message").get<std::string>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("record: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaViolation) throw;
    throw Error(ErrorKind::SchemaViolation, std::string("record: ") + e.what());
  }
}

void export_records(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  for (const auto& r : records) out << record_to_json(r) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::vector<RunRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::vector<RunRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::SchemaViolation, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace conductor::data
