// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/backend/replay.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "json.hpp"

namespace conductor::backend {

using nlohmann::json;

std::string fixture_line(const FixtureEntry& e) {
  json j = {{"hash", e.hash},
            {"model", e.model},
            {"prompt", e.prompt},
            {"response", e.response},
            {"prompt_tokens", e.prompt_tokens},
            {"completion_tokens", e.completion_tokens}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

FixtureEntry parse_fixture_line(std::string_view line, std::size_t line_no) {
  const auto fail = [&](const std::string& why) -> FixtureEntry {
    throw Error(ErrorKind::SchemaViolation, "fixture line " + std::to_string(line_no) + ": " + why);
  };
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    return fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) return fail("expected an object");
  FixtureEntry e;
  for (const char* key : {"hash", "model", "prompt", "response"}) {
    if (!j.contains(key) || !j[key].is_string()) return fail(std::string("missing string field '") + key + "'");
  }
  for (const char* key : {"prompt_tokens", "completion_tokens"}) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 0) {
      return fail(std::string("field '") + key + "' must be a non-negative integer");
    }
  }
  e.hash = j["hash"].get<std::string>();
  e.model = j["model"].get<std::string>();
  e.prompt = j["prompt"].get<std::string>();
  e.response = j["response"].get<std::string>();
  e.prompt_tokens = j["prompt_tokens"].get<std::int64_t>();
  e.completion_tokens = j["completion_tokens"].get<std::int64_t>();
  if (request_hash(e.model, e.prompt) != e.hash) return fail("hash does not match model and prompt");
  return e;
}

ReplayBackend::ReplayBackend(std::vector<FixtureEntry> entries) {
  for (auto& e : entries) {
    const auto [it, inserted] = entries_.try_emplace(e.hash, e);
    if (!inserted && it->second.response != e.response) {
      throw Error(ErrorKind::InvalidArgument, "conflicting fixture responses for hash " + e.hash);
    }
  }
}

ReplayBackend ReplayBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open fixture file " + path.string());
  std::vector<FixtureEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    entries.push_back(parse_fixture_line(line, line_no));
  }
  return ReplayBackend(std::move(entries));
}

Generation ReplayBackend::complete(const CompletionRequest& request) {
  request.validate();
  const std::string hash = request_hash(request);
  const auto it = entries_.find(hash);
  if (it == entries_.end()) {
    throw Error(ErrorKind::ReplayMiss, "no fixture for request hash " + hash);
  }
  Generation g;
  g.text = it->second.response;
  g.prompt_tokens = it->second.prompt_tokens;
  g.completion_tokens = it->second.completion_tokens;
  g.latency_ms = 0;
  g.backend_tag = tag();
  g.model_id = request.model_id;
  return g;
}

Generation RecordingBackend::complete(const CompletionRequest& request) {
  Generation g = inner_.complete(request);
  FixtureEntry e{request_hash(request), request.model_id, request.prompt_text(), g.text,
                 g.prompt_tokens, g.completion_tokens};
  std::lock_guard lock(mu_);
  entries_.push_back(std::move(e));
  return g;
}

std::vector<FixtureEntry> RecordingBackend::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

void write_fixtures(const std::filesystem::path& path, std::vector<FixtureEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const FixtureEntry& a, const FixtureEntry& b) {
    return a.hash < b.hash;
  });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const FixtureEntry& a, const FixtureEntry& b) { return a.hash == b.hash; }),
                entries.end());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write fixture file " + path.string());
  for (const auto& e : entries) out << fixture_line(e) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace conductor::backend
