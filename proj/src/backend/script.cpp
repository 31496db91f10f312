// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/backend/script.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "conductor/core/errors.hpp"
#include "json.hpp"

namespace conductor::backend {

std::string_view prompt_tail(std::string_view prompt) {
  const auto pos = prompt.rfind("Dialogue: ");
  return pos == std::string_view::npos ? prompt : prompt.substr(pos);
}

Script Script::parse(std::string_view json_text) {
  using nlohmann::json;
  Script s;
  try {
    const json j = json::parse(json_text);
    for (const auto& r : j.at("rules")) {
      ScriptRule rule;
      if (r.contains("prompt_contains")) rule.prompt_contains = r["prompt_contains"].get<std::vector<std::string>>();
      if (r.contains("tail_contains")) rule.tail_contains = r["tail_contains"].get<std::vector<std::string>>();
      if (r.contains("ends_with")) rule.ends_with = r["ends_with"].get<std::string>();
      rule.response = r.at("response").get<std::string>();
      s.rules_.push_back(std::move(rule));
    }
    if (j.contains("default") && !j["default"].is_null()) s.default_ = j["default"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("script: ") + e.what());
  }
  return s;
}

Script Script::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Script::respond(std::string_view prompt) const {
  const std::string_view tail = prompt_tail(prompt);
  const ScriptRule* best = nullptr;
  std::size_t best_score = 0;
  for (const auto& rule : rules_) {
    if (!prompt.ends_with(rule.ends_with)) continue;
    const auto contains_all = [](std::string_view hay, const std::vector<std::string>& needles) {
      return std::all_of(needles.begin(), needles.end(),
                         [&](const std::string& n) { return hay.find(n) != std::string_view::npos; });
    };
    if (!contains_all(prompt, rule.prompt_contains) || !contains_all(tail, rule.tail_contains)) continue;
    const std::size_t score =
        rule.prompt_contains.size() + rule.tail_contains.size() + (rule.ends_with.empty() ? 0 : 1);
    if (best == nullptr || score > best_score) {
      best = &rule;
      best_score = score;
    }
  }
  if (best != nullptr) return best->response;
  if (default_) return *default_;
  const auto shown = tail.substr(0, std::min<std::size_t>(tail.size(), 120));
  throw Error(ErrorKind::ReplayMiss, "no script rule matches prompt tail '" + std::string(shown) + "'");
}

}  // namespace conductor::backend
