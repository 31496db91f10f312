// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/data/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "conductor/data/catalog.hpp"
#include "json.hpp"

namespace conductor::data {
namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& reason) { throw Error(ErrorKind::SchemaViolation, reason); }

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) violation(std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j[key].is_array()) violation(std::string("field '") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) violation(std::string("field '") + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t index_value(const json& v, std::size_t bound, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || static_cast<std::size_t>(v.get<long long>()) >= bound) {
    violation(std::string("field '") + key + "' must hold indices below " + std::to_string(bound));
  }
  return static_cast<std::size_t>(v.get<long long>());
}

Role speaker_role(std::string_view label, const RoleStyle& style) {
  if (const auto r = style.role_of(label)) return *r;
  if (label == "user") return Role::User;
  if (label == "system") return Role::System;
  violation("unknown speaker '" + std::string(label) + "' (expected " + style.user + " or " + style.system + ")");
}

}  // namespace

std::vector<std::string> Sample::gold_persona_texts() const {
  std::vector<std::string> out;
  if (persona_candidates && gold_persona_indices) {
    for (std::size_t i : *gold_persona_indices) out.push_back((*persona_candidates)[i]);
  }
  return out;
}

std::vector<std::string> Sample::gold_document_texts() const {
  std::vector<std::string> out;
  if (document_candidates && gold_document_index) out.push_back((*document_candidates)[*gold_document_index]);
  return out;
}

metrics::Reference Sample::reference() const {
  return {id, gold_response, gold_persona_texts(), gold_document_texts()};
}

std::vector<std::string> strategy_names(DatasetKind kind) {
  if (is_source_kind(kind)) return {};
  std::vector<std::string> out;
  const ToolSet toolset = default_toolset(Method::Tpe, kind);
  for (const auto& t : toolset.tools()) out.push_back(t.name);
  return out;
}

Sample parse_sample(std::string_view line, DatasetKind kind, const std::vector<std::string>& strategies) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    violation(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) violation("expected a JSON object");
  const std::string id = require_string(j, "id");
  if (text::trim(id).empty()) violation("empty id");
  if (!j.contains("dialogue") || !j["dialogue"].is_array() || j["dialogue"].empty()) {
    violation("'dialogue' must be a non-empty array");
  }
  const RoleStyle style = default_role_style(kind);
  std::vector<Utterance> utterances;
  for (const auto& u : j["dialogue"]) {
    if (!u.is_object()) violation("dialogue turns must be objects");
    const std::string speaker = require_string(u, "speaker");
    std::string content = require_string(u, "text");
    if (text::trim(content).empty()) violation("blank utterance text");
    utterances.push_back({speaker_role(speaker, style), std::move(content)});
  }
  if (utterances.back().speaker != Role::User) violation("the last turn must belong to " + style.user);

  Sample s{id, Dialogue(id, kind, std::move(utterances)), require_string(j, "response"), {}, {}, {}, {}, {}};
  if (text::trim(s.gold_response).empty()) violation("empty response");

  if (is_source_kind(kind)) {
    for (const char* key : {"persona_candidates", "document_candidates"}) {
      if (!j.contains(key)) violation(std::string("missing field '") + key + "'");
    }
    s.persona_candidates = string_list(j, "persona_candidates");
    s.document_candidates = string_list(j, "document_candidates");
    if (s.persona_candidates->size() != kFocusPersonaCandidates) {
      violation("expected " + std::to_string(kFocusPersonaCandidates) + " persona candidates, got " +
                std::to_string(s.persona_candidates->size()));
    }
    if (s.document_candidates->size() != kFocusDocumentCandidates) {
      violation("expected " + std::to_string(kFocusDocumentCandidates) + " document candidates, got " +
                std::to_string(s.document_candidates->size()));
    }
    if (j.contains("gold_persona_indices") && !j["gold_persona_indices"].is_null()) {
      if (!j["gold_persona_indices"].is_array()) violation("'gold_persona_indices' must be an array");
      std::vector<std::size_t> idx;
      for (const auto& v : j["gold_persona_indices"]) {
        idx.push_back(index_value(v, kFocusPersonaCandidates, "gold_persona_indices"));
      }
      s.gold_persona_indices = std::move(idx);
    }
    if (j.contains("gold_document_index") && !j["gold_document_index"].is_null()) {
      s.gold_document_index = index_value(j["gold_document_index"], kFocusDocumentCandidates, "gold_document_index");
    }
  } else {
    if (!j.contains("gold_strategies")) violation("missing field 'gold_strategies'");
    s.gold_strategies = string_list(j, "gold_strategies");
    if (s.gold_strategies->empty()) violation("'gold_strategies' must not be empty");
    for (const auto& name : *s.gold_strategies) {
      if (name != kOthersStrategy && std::find(strategies.begin(), strategies.end(), name) == strategies.end()) {
        violation("unknown strategy '" + name + "'");
      }
    }
  }
  return s;
}

std::vector<Sample> parse_dataset(std::string_view text, DatasetKind kind) {
  const auto strategies = strategy_names(kind);
  std::vector<Sample> out;
  std::string problems;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(text)) {
    ++line_no;
    if (text::trim(line.text).empty()) continue;
    try {
      Sample s = parse_sample(line.text, kind, strategies);
      if (!ids.insert(s.id).second) violation("duplicate id '" + s.id + "'");
      out.push_back(std::move(s));
    } catch (const Error& e) {
      if (!problems.empty()) problems += "\n";
      std::string_view what = e.what();
      const std::string prefix = std::string(to_string(e.kind())) + ": ";
      if (what.starts_with(prefix)) what.remove_prefix(prefix.size());
      problems += "line " + std::to_string(line_no) + ": " + std::string(what);
    }
  }
  if (!problems.empty()) throw Error(ErrorKind::SchemaViolation, problems);
  return out;
}

std::vector<Sample> load_dataset(const std::filesystem::path& path, DatasetKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open dataset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str(), kind);
}

}  // namespace conductor::data
