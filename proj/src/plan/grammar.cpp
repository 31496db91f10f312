// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/plan/grammar.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"

namespace conductor::plan {
namespace {

using text::trim;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Index one past the bracket closing the one opened just before `start`,
/// counting nesting. Falls back to the last ']' in `s` when unbalanced.
std::optional<std::size_t> match_bracket(std::string_view s, std::size_t start) {
  int depth = 1;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '[') {
      ++depth;
    } else if (s[i] == ']') {
      if (--depth == 0) return i;
    }
  }
  const auto last = s.rfind(']');
  if (last != std::string_view::npos && last >= start) return last;
  return std::nullopt;
}

/// Parses "<digits>" right after a sigil occurrence.
std::size_t scan_digits(std::string_view s, std::size_t pos) {
  std::size_t end = pos;
  while (end < s.size() && is_digit(s[end])) ++end;
  return end;
}

QuerySpec parse_query(std::string_view content, std::string_view sigil, std::size_t line_offset) {
  QuerySpec query;
  const std::string_view body = trim(content);
  if (body.empty()) throw ParseError(line_offset, "empty query in brackets");
  if (body == "context") {
    query.parts.emplace_back(ContextRef{});
    return query;
  }
  const std::string name_prefix = sigil_name(sigil);
  std::size_t cursor = 0;
  std::size_t pos = 0;
  auto push_literal = [&](std::string_view piece) {
    const auto t = trim(piece);
    if (!t.empty()) query.parts.emplace_back(Literal{std::string(t)});
  };
  while ((pos = body.find(sigil, pos)) != std::string_view::npos) {
    const std::size_t digits_end = scan_digits(body, pos + sigil.size());
    if (digits_end == pos + sigil.size()) {
      pos += sigil.size();
      continue;
    }
    push_literal(body.substr(cursor, pos - cursor));
    query.parts.emplace_back(
        VarRef{name_prefix + std::string(body.substr(pos + sigil.size(), digits_end - pos - sigil.size()))});
    cursor = pos = digits_end;
  }
  push_literal(body.substr(cursor));
  return query;
}

int var_index(std::string_view digits) {
  // Digits are already validated; cap to keep pathological input in range.
  int value = 0;
  for (char c : digits.substr(0, 9)) value = value * 10 + (c - '0');
  return value;
}

std::string strip_quotes(std::string_view item) {
  static const std::vector<std::string_view> kQuotes = {"\"", "'", "`", "\xE2\x80\x9C", "\xE2\x80\x9D",
                                                        "\xE2\x80\x98", "\xE2\x80\x99"};
  std::string_view s = trim(item);
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    for (const auto q : kQuotes) {
      if (s.starts_with(q)) {
        s.remove_prefix(q.size());
        changed = true;
      }
      if (s.ends_with(q)) {
        s.remove_suffix(q.size());
        changed = true;
      }
    }
    s = trim(s);
  }
  return std::string(s);
}

}  // namespace

std::string sigil_name(std::string_view sigil) {
  const auto first = sigil.find_first_not_of('#');
  return first == std::string_view::npos ? std::string() : std::string(sigil.substr(first));
}

SourcePlanProgram parse_source_plan(std::string_view text, std::string_view sigil) {
  if (sigil.empty()) throw Error(ErrorKind::InvalidArgument, "plan sigil must not be empty");
  SourcePlanProgram program;
  program.sigil = std::string(sigil);
  const std::string name_prefix = sigil_name(sigil);

  std::optional<std::string> pending_desc;
  std::size_t pending_pos = 0;
  int last_index = 0;
  std::set<std::string, std::less<>> bound;

  for (const auto& line : text::split_lines(text)) {
    const std::string_view t = trim(line.text);
    if (t.empty()) continue;
    if (t.starts_with("Plan:")) {
      if (pending_desc) throw ParseError(pending_pos, "Plan line without an assignment");
      pending_desc = std::string(trim(t.substr(5)));
      pending_pos = line.offset;
      continue;
    }
    if (!t.starts_with(sigil)) continue;

    const std::size_t digits_end = scan_digits(t, sigil.size());
    if (digits_end == sigil.size()) throw ParseError(line.offset, "variable index expected after sigil");
    const std::string_view digits = t.substr(sigil.size(), digits_end - sigil.size());
    std::string_view rest = trim(t.substr(digits_end));
    if (!rest.starts_with('=')) throw ParseError(line.offset, "'=' expected after variable");
    rest = trim(rest.substr(1));
    const auto open = rest.find('[');
    if (open == std::string_view::npos) throw ParseError(line.offset, "'[' expected after source name");
    const std::string_view source = trim(rest.substr(0, open));
    if (source.empty()) throw ParseError(line.offset, "source name expected");
    const auto close = match_bracket(rest, open + 1);
    if (!close) throw ParseError(line.offset, "unterminated query bracket");

    const int index = var_index(digits);
    if (index <= last_index) throw ParseError(line.offset, "variable indices must strictly increase");
    last_index = index;

    SourcePlanStep step;
    step.description = pending_desc.value_or("");
    step.source_name = std::string(source);
    step.output_var = name_prefix + std::string(digits);
    step.query = parse_query(rest.substr(open + 1, *close - open - 1), sigil, line.offset);
    for (const auto& seg : step.query.parts) {
      if (const auto* ref = std::get_if<VarRef>(&seg); ref && !bound.contains(ref->name)) {
        throw Error(ErrorKind::DanglingReference,
                    "step " + step.output_var + " refers to " + ref->name + " before it is bound");
      }
    }
    bound.insert(step.output_var);
    program.steps.push_back(std::move(step));
    pending_desc.reset();
  }
  if (program.steps.empty()) throw ParseError(0, "no plan steps found");
  return program;
}

StrategyPlan parse_strategy_plan(std::string_view text) {
  StrategyPlan plan;
  std::optional<std::string> pending;
  std::size_t pending_pos = 0;
  for (const auto& line : text::split_lines(text)) {
    const std::string_view t = trim(line.text);
    if (t.starts_with("Plan:")) {
      if (pending) throw ParseError(pending_pos, "Plan line without a following Do line");
      const auto name = trim(t.substr(5));
      if (name.empty()) throw ParseError(line.offset, "strategy name expected after 'Plan:'");
      pending = std::string(name);
      pending_pos = line.offset;
    } else if (t.starts_with("Do:")) {
      if (!pending) throw ParseError(line.offset, "Do line without a preceding Plan line");
      const auto fragment = trim(t.substr(3));
      if (fragment.empty()) throw ParseError(line.offset, "empty Do fragment");
      plan.steps.push_back({std::move(*pending), std::string(fragment)});
      pending.reset();
    }
  }
  if (pending) throw ParseError(pending_pos, "Plan line without a following Do line");
  if (plan.steps.empty()) throw ParseError(0, "no Plan/Do pairs found");
  return plan;
}

ReActStep parse_react_step(std::string_view text) {
  const auto lines = text::split_lines(text);
  std::optional<std::size_t> action_line;
  for (std::size_t i = lines.size(); i-- > 0;) {
    if (trim(lines[i].text).starts_with("Action:")) {
      action_line = i;
      break;
    }
  }
  if (!action_line) throw ParseError(0, "no Action line");

  ReActStep step;
  for (std::size_t i = *action_line; i-- > 0;) {
    const auto t = trim(lines[i].text);
    if (t.starts_with("Thought:")) {
      step.thought = std::string(trim(t.substr(8)));
      break;
    }
  }

  const auto& line = lines[*action_line];
  const std::size_t action_start = line.offset + line.text.find("Action:") + 7;
  // Bracketed arguments may run past the end of the line.
  const std::string_view remainder = text.substr(action_start);
  const std::string_view action = trim(remainder);
  const std::size_t line_end_rel = line.offset + line.text.size() - action_start;
  const std::string_view on_line = trim(remainder.substr(0, line_end_rel));

  if (on_line.empty()) throw ParseError(line.offset, "empty Action");

  const auto open = on_line.find('[');
  if (open == std::string_view::npos) {
    step.action = StrategyCall{std::string(on_line)};
    return step;
  }
  const std::string_view name = trim(on_line.substr(0, open));
  if (name.empty()) throw ParseError(line.offset, "action name expected before '['");
  const std::size_t open_abs = open + (on_line.data() - action.data());
  const auto close = match_bracket(action, open_abs + 1);
  if (!close) throw ParseError(line.offset, "unterminated action bracket");
  const std::string arg(action.substr(open_abs + 1, *close - open_abs - 1));
  if (name == "Finish") {
    step.action = Finish{std::string(trim(arg))};
  } else {
    step.action = ToolCall{std::string(name), std::string(trim(arg))};
  }
  return step;
}

ModulePlan parse_module_list(std::string_view text) {
  std::size_t key = std::string_view::npos;
  std::size_t key_len = 0;
  for (const std::string_view kw : {std::string_view("Modules:"), std::string_view("Strategies:")}) {
    const auto at = text.find(kw);
    if (at != std::string_view::npos && at < key) {
      key = at;
      key_len = kw.size();
    }
  }
  if (key == std::string_view::npos) throw ParseError(0, "no 'Modules:' or 'Strategies:' list");
  std::size_t pos = key + key_len;
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos >= text.size() || text[pos] != '[') throw ParseError(key, "'[' expected after list keyword");
  const auto close = text.find(']', pos + 1);
  if (close == std::string_view::npos) throw ParseError(key, "unbalanced module list");

  ModulePlan plan;
  const std::string_view body = text.substr(pos + 1, close - pos - 1);
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    std::string item = strip_quotes(body.substr(start, comma - start));
    if (!item.empty()) plan.modules.push_back(std::move(item));
    start = comma + 1;
  }
  if (plan.modules.empty()) throw ParseError(key, "empty module list");
  return plan;
}

std::string render_source_plan(const SourcePlanProgram& program) {
  const std::string hashes = program.sigil.substr(0, program.sigil.find_first_not_of('#'));
  std::string out;
  for (const auto& step : program.steps) {
    if (!out.empty()) out.push_back('\n');
    if (!step.description.empty()) {
      out += "Plan: ";
      out += step.description;
      out.push_back('\n');
    }
    out += hashes + step.output_var + " = " + step.source_name + "[";
    for (std::size_t i = 0; i < step.query.parts.size(); ++i) {
      if (i > 0) out.push_back(' ');
      const auto& seg = step.query.parts[i];
      if (const auto* lit = std::get_if<Literal>(&seg)) {
        out += lit->text;
      } else if (const auto* ref = std::get_if<VarRef>(&seg)) {
        out += hashes + ref->name;
      } else {
        out += "context";
      }
    }
    out += "]";
  }
  return out;
}

std::string substitute_vars(const QuerySpec& query, const EvidenceStore& store,
                            std::string_view context_text) {
  std::string out;
  for (const auto& seg : query.parts) {
    std::string piece;
    if (const auto* lit = std::get_if<Literal>(&seg)) {
      piece = lit->text;
    } else if (const auto* ref = std::get_if<VarRef>(&seg)) {
      const Binding* b = store.find(ref->name);
      if (b == nullptr) throw Error(ErrorKind::UnboundVariable, "variable '" + ref->name + "' is not bound");
      piece = binding_text(*b);
    } else {
      piece = std::string(context_text);
    }
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

void validate_source_plan(const SourcePlanProgram& program, const ToolSet& toolset) {
  for (const auto& step : program.steps) {
    if (toolset.find(step.source_name) == nullptr) {
      throw Error(ErrorKind::UnknownTool, "source '" + step.source_name + "' is not in the toolset");
    }
  }
}

std::vector<std::string> unknown_strategies(const StrategyPlan& plan, const ToolSet& toolset) {
  std::vector<std::string> out;
  for (const auto& step : plan.steps) {
    if (toolset.find(step.strategy_name) == nullptr) out.push_back(step.strategy_name);
  }
  return out;
}

std::vector<std::string> plan_labels(const PlanProgram& program) {
  std::vector<std::string> out;
  if (const auto* s = std::get_if<SourcePlanProgram>(&program)) {
    for (const auto& step : s->steps) out.push_back(step.source_name);
  } else if (const auto* st = std::get_if<StrategyPlan>(&program)) {
    for (const auto& step : st->steps) out.push_back(step.strategy_name);
  } else if (const auto* m = std::get_if<ModulePlan>(&program)) {
    out = m->modules;
  } else if (const auto* r = std::get_if<ReActTrace>(&program)) {
    for (const auto& step : r->steps) {
      if (const auto* call = std::get_if<StrategyCall>(&step.action); call && call->name != "Response") {
        out.push_back(call->name);
      }
    }
  }
  return out;
}

}  // namespace conductor::plan
