// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/data/catalog.hpp"

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "json.hpp"

namespace conductor::data {
namespace {

using nlohmann::json;

std::string template_name(Method method, DatasetKind kind) {
  return "templates/" + std::string(to_string(method)) + "_" + std::string(to_string(kind)) + ".tpl";
}

std::string bank_name(Method method, DatasetKind kind) {
  return "demos/" + std::string(to_string(method)) + "_" + std::string(to_string(kind)) + ".jsonl";
}

std::optional<std::string> optional_string(const json& j, const char* key, std::size_t line_no) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) {
    throw Error(ErrorKind::SchemaViolation,
                "demo line " + std::to_string(line_no) + ": field '" + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

}  // namespace

bool method_applicable(Method method, DatasetKind kind) {
  return ResourceStore::builtin().find(template_name(method, kind)).has_value();
}

PromptTemplate load_template(Method method, DatasetKind kind, const ResourceStore& store) {
  const std::string name = template_name(method, kind);
  const auto text = store.find(name);
  if (!text) {
    throw Error(ErrorKind::MethodNotApplicable, std::string(to_string(method)) + " is not defined for " +
                                                    std::string(to_string(kind)));
  }
  return PromptTemplate::parse(*text, name);
}

ToolSet parse_toolset(std::string_view json_text, std::string_view name) {
  const std::string where = "toolset '" + std::string(name) + "'";
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
  }
  const auto fail = [&](const std::string& why) { throw Error(ErrorKind::SchemaViolation, where + ": " + why); };
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail("missing 'kind'");
  const std::string kind_name = j["kind"].get<std::string>();
  ToolKind kind = ToolKind::Source;
  if (kind_name == "STRATEGY") {
    kind = ToolKind::Strategy;
  } else if (kind_name != "SOURCE") {
    fail("kind must be SOURCE or STRATEGY");
  }
  if (!j.contains("tools") || !j["tools"].is_array()) fail("missing 'tools' array");
  std::vector<ConceptualTool> tools;
  for (const auto& t : j["tools"]) {
    if (!t.is_object() || !t.contains("name") || !t["name"].is_string() || !t.contains("description") ||
        !t["description"].is_string()) {
      fail("every tool needs a string name and description");
    }
    ConceptualTool tool;
    tool.name = t["name"].get<std::string>();
    tool.description = t["description"].get<std::string>();
    tool.kind = kind;
    if (t.contains("corpus")) tool.corpus = t["corpus"].get<std::string>();
    if (t.contains("aliases")) tool.aliases = t["aliases"].get<std::vector<std::string>>();
    if (t.contains("examples")) {
      for (const auto& ex : t["examples"]) tool.examples.push_back({ex.at("input").get<std::string>(),
                                                                     ex.at("output").get<std::string>()});
    }
    tools.push_back(std::move(tool));
  }
  return ToolSet(kind, std::move(tools));
}

ToolSet load_toolset(std::string_view name, const ResourceStore& store) {
  return parse_toolset(store.get("toolsets/" + std::string(name) + ".json"), name);
}

ToolSet default_toolset(Method method, DatasetKind kind, const ResourceStore& store) {
  if (kind == DatasetKind::Focus) {
    if (method == Method::Rewoo) return load_toolset("rewoo_focus", store);
    if (method == Method::Chameleon) return load_toolset("chameleon_focus", store);
  }
  return load_toolset(to_string(kind), store);
}

std::vector<Demonstration> parse_demo_bank(std::string_view jsonl, std::string_view method_tag) {
  std::vector<Demonstration> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(jsonl)) {
    ++line_no;
    if (text::trim(line.text).empty()) continue;
    json j;
    try {
      j = json::parse(line.text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, "demo line " + std::to_string(line_no) + ": " + e.what());
    }
    Demonstration d;
    d.id = optional_string(j, "id", line_no).value_or(std::to_string(line_no));
    const auto dialogue = optional_string(j, "dialogue", line_no);
    if (!dialogue) {
      throw Error(ErrorKind::SchemaViolation, "demo line " + std::to_string(line_no) + ": missing 'dialogue'");
    }
    d.dialogue_text = *dialogue;
    d.thought_text = optional_string(j, "thought", line_no);
    d.plan_text = optional_string(j, "plan", line_no);
    d.response_text = optional_string(j, "response", line_no);
    if (!d.thought_text && !d.plan_text && !d.response_text) {
      throw Error(ErrorKind::SchemaViolation,
                  "demo line " + std::to_string(line_no) + ": needs a thought, plan or response");
    }
    d.method_tag = optional_string(j, "tag", line_no).value_or(std::string(method_tag));
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Demonstration> select_demonstrations(DatasetKind kind, Method method, std::optional<std::size_t> count,
                                                 const ResourceStore& store) {
  const std::string name = bank_name(method, kind);
  const auto text = store.find(name);
  if (!text) throw Error(ErrorKind::MissingDemoBank, "no demonstration bank " + name);
  auto demos = parse_demo_bank(*text, to_string(method));
  if (count && *count < demos.size()) demos.resize(*count);
  return demos;
}

std::vector<Demonstration> select_module_demonstrations(DatasetKind kind, std::string_view module,
                                                        const ResourceStore& store) {
  const std::string name = "demos/chameleon_" + std::string(to_string(kind)) + "_modules.jsonl";
  const auto text = store.find(name);
  if (!text) return {};
  std::vector<Demonstration> out;
  for (auto& d : parse_demo_bank(*text, "chameleon")) {
    if (d.method_tag == module) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace conductor::data
