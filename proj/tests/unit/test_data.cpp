// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "conductor/data/catalog.hpp"
#include "conductor/data/dataset.hpp"
#include "conductor/data/records.hpp"
#include "conductor/data/resources.hpp"
#include "conductor/plan/grammar.hpp"
#include "paths.hpp"

namespace conductor::data {
namespace {

using nlohmann::json;
using testing_support::fixture;
using testing_support::TempDir;

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no conductor::Error thrown";
  return Error(ErrorKind::InvalidArgument, "none");
}

json focus_line() {
  json j;
  j["id"] = "f1";
  j["dialogue"] = json::array({{{"speaker", "USER"}, {"text", "Where is this?"}}});
  j["response"] = "It is Newton.";
  j["persona_candidates"] = {"p0", "p1", "p2", "p3", "p4"};
  json docs = json::array();
  for (int i = 0; i < 10; ++i) docs.push_back("d" + std::to_string(i));
  j["document_candidates"] = docs;
  j["gold_persona_indices"] = {1, 3};
  j["gold_document_index"] = 2;
  return j;
}

json cima_line(const std::string& id) {
  json j;
  j["id"] = id;
  j["dialogue"] = json::array({{{"speaker", "Teacher"}, {"text", "Translate."}},
                               {{"speaker", "Student"}, {"text", "How do you say box?"}}});
  j["response"] = "box is scatola.";
  j["gold_strategies"] = {"Hint"};
  return j;
}

TEST(Dataset, ParsesFocusSample) {
  const auto s = parse_sample(focus_line().dump(), DatasetKind::Focus, {});
  EXPECT_EQ(s.id, "f1");
  EXPECT_EQ(s.dialogue.utterances().size(), 1u);
  EXPECT_EQ(s.gold_persona_texts(), (std::vector<std::string>{"p1", "p3"}));
  EXPECT_EQ(s.gold_document_texts(), (std::vector<std::string>{"d2"}));
  const auto ref = s.reference();
  EXPECT_EQ(ref.sample_id, "f1");
  EXPECT_EQ(ref.response, "It is Newton.");
  EXPECT_EQ(ref.gold_documents, (std::vector<std::string>{"d2"}));
}

TEST(Dataset, RejectsFourPersonas) {
  auto j = focus_line();
  j["persona_candidates"].erase(4);
  const auto e = error_of([&] { (void)parse_sample(j.dump(), DatasetKind::Focus, {}); });
  EXPECT_EQ(e.kind(), ErrorKind::SchemaViolation);
  EXPECT_NE(std::string(e.what()).find("5 persona candidates"), std::string::npos);
}

TEST(Dataset, SchemaViolations) {
  const auto names = strategy_names(DatasetKind::Cima);
  const auto bad = [&](json j, DatasetKind kind = DatasetKind::Cima) {
    return error_of([&] { (void)parse_sample(j.dump(), kind, names); }).kind();
  };
  EXPECT_EQ(error_of([&] { (void)parse_sample("{not json", DatasetKind::Cima, names); }).kind(),
            ErrorKind::SchemaViolation);
  auto j = cima_line("c");
  j["gold_strategies"] = {"Telepathy"};
  EXPECT_EQ(bad(j), ErrorKind::SchemaViolation);
  j = cima_line("c");
  j["dialogue"].push_back({{"speaker", "Teacher"}, {"text", "Well?"}});
  EXPECT_EQ(bad(j), ErrorKind::SchemaViolation);
  j = cima_line("c");
  j["dialogue"][0]["speaker"] = "USER";
  EXPECT_EQ(bad(j), ErrorKind::SchemaViolation);
  j = cima_line("c");
  j.erase("gold_strategies");
  EXPECT_EQ(bad(j), ErrorKind::SchemaViolation);
  j = focus_line();
  j["gold_document_index"] = 10;
  EXPECT_EQ(bad(j, DatasetKind::Focus), ErrorKind::SchemaViolation);
  j = cima_line("c");
  j["gold_strategies"] = {"Others"};
  EXPECT_NO_THROW((void)parse_sample(j.dump(), DatasetKind::Cima, names));
}

TEST(Dataset, ReportsEveryInvalidLine) {
  std::string text = cima_line("a").dump() + "\n{bad\n" + cima_line("b").dump() + "\n" + cima_line("a").dump() + "\n";
  const auto e = error_of([&] { (void)parse_dataset(text, DatasetKind::Cima); });
  EXPECT_EQ(e.kind(), ErrorKind::SchemaViolation);
  const std::string what = e.what();
  EXPECT_NE(what.find("line 2: "), std::string::npos);
  EXPECT_NE(what.find("line 4: duplicate id 'a'"), std::string::npos);
  EXPECT_EQ(what.find("line 1:"), std::string::npos);
}

TEST(Dataset, PreservesOrderOfManyLines) {
  std::string text;
  for (int i = 0; i < 200; ++i) text += cima_line("s" + std::to_string(i)).dump() + "\n";
  text += "\n";
  const auto samples = parse_dataset(text, DatasetKind::Cima);
  ASSERT_EQ(samples.size(), 200u);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(samples[static_cast<std::size_t>(i)].id, "s" + std::to_string(i));
}

TEST(Dataset, ShippedFixturesLoad) {
  EXPECT_EQ(load_dataset(fixture("focus.jsonl"), DatasetKind::Focus).size(), 2u);
  EXPECT_EQ(load_dataset(fixture("cima.jsonl"), DatasetKind::Cima).size(), 2u);
  const auto psy = load_dataset(fixture("psyqa.jsonl"), DatasetKind::PsyQA);
  ASSERT_EQ(psy.size(), 2u);
  EXPECT_EQ(psy[0].id, "psyqa-sleep");
  EXPECT_EQ(error_of([] { (void)load_dataset("/nonexistent/x.jsonl", DatasetKind::Cima); }).kind(),
            ErrorKind::IoError);
}

TEST(Catalog, Applicability) {
  EXPECT_TRUE(method_applicable(Method::Rewoo, DatasetKind::Focus));
  EXPECT_FALSE(method_applicable(Method::Rewoo, DatasetKind::Cima));
  EXPECT_FALSE(method_applicable(Method::CueCot, DatasetKind::Focus));
  EXPECT_TRUE(method_applicable(Method::CueCot, DatasetKind::PsyQA));
  for (auto m : {Method::Tpe, Method::Cot, Method::React, Method::Chameleon}) {
    for (auto k : {DatasetKind::Focus, DatasetKind::Cima, DatasetKind::PsyQA}) EXPECT_TRUE(method_applicable(m, k));
  }
}

TEST(Catalog, DemonstrationSelection) {
  EXPECT_EQ(select_demonstrations(DatasetKind::Focus, Method::Tpe).size(), 3u);
  EXPECT_EQ(select_demonstrations(DatasetKind::PsyQA, Method::Tpe).size(), 2u);
  EXPECT_TRUE(select_demonstrations(DatasetKind::Focus, Method::Tpe, 0).empty());
  EXPECT_EQ(select_demonstrations(DatasetKind::Focus, Method::Tpe, 1).size(), 1u);
  const auto cima = select_demonstrations(DatasetKind::Cima, Method::Tpe);
  ASSERT_EQ(cima.size(), 3u);
  std::vector<std::vector<std::string>> seqs;
  for (const auto& d : cima) {
    ASSERT_TRUE(d.plan_text.has_value());
    std::vector<std::string> names;
    for (const auto& s : plan::parse_strategy_plan(*d.plan_text).steps) names.push_back(s.strategy_name);
    seqs.push_back(names);
  }
  EXPECT_EQ(seqs, (std::vector<std::vector<std::string>>{{"Hint", "Question"}, {"Hint"}, {"Question"}}));
  EXPECT_EQ(error_of([] { (void)select_demonstrations(DatasetKind::Cima, Method::Rewoo); }).kind(),
            ErrorKind::MissingDemoBank);
  const auto psy = select_demonstrations(DatasetKind::PsyQA, Method::Tpe);
  std::vector<std::string> transition;
  for (const auto& s : plan::parse_strategy_plan(*psy[0].plan_text).steps) transition.push_back(s.strategy_name);
  EXPECT_EQ(transition, (std::vector<std::string>{"Approval and Reassurance", "Interpretation", "Direct Guidance",
                                                  "Interpretation", "Direct Guidance"}));
}

TEST(Catalog, ModuleDemonstrations) {
  const auto hints = select_module_demonstrations(DatasetKind::Cima, "Confirmation");
  ASSERT_FALSE(hints.empty());
  EXPECT_TRUE(select_module_demonstrations(DatasetKind::Cima, "Nonexistent").empty());
}

TEST(Catalog, Toolsets) {
  const auto focus = default_toolset(Method::Tpe, DatasetKind::Focus);
  EXPECT_EQ(focus.kind(), ToolKind::Source);
  EXPECT_NE(focus.find("persona"), nullptr);
  EXPECT_NE(focus.find("DOCUMENT"), nullptr);
  const auto cima = default_toolset(Method::Tpe, DatasetKind::Cima);
  EXPECT_EQ(cima.kind(), ToolKind::Strategy);
  EXPECT_EQ(cima.tools().size(), 5u);
  EXPECT_EQ(cima.tools().front().name, "Hint");
  EXPECT_NE(default_toolset(Method::Rewoo, DatasetKind::Focus).find("KNOWLEDGE"), nullptr);
  const auto custom = parse_toolset(
      R"({"kind": "SOURCE", "tools": [{"name": "WIKI", "description": "Encyclopedia.", "aliases": ["W"]}]})", "x");
  EXPECT_EQ(custom.find("w")->name, "WIKI");
  EXPECT_THROW((void)parse_toolset(R"({"kind": "MAGIC", "tools": []})", "x"), Error);
}

// Chameleon banks hold the bare list; ReAct banks hold whole traces.
TEST(Catalog, EveryShippedExemplarPlanParses) {
  const auto& store = ResourceStore::builtin();
  std::size_t checked = 0;
  for (const auto& name : store.list("demos/")) {
    if (name.ends_with("_modules.jsonl")) continue;
    const std::string stem = name.substr(6, name.size() - 6 - 6);
    const auto kind = parse_dataset_kind(stem.substr(stem.find('_') + 1));
    ASSERT_TRUE(kind.has_value()) << name;
    const std::string bank = store.get(name);
    for (const auto& line : text::split_lines(bank)) {
      if (text::trim(line.text).empty()) continue;
      const auto j = json::parse(line.text);
      if (!j.contains("plan")) continue;
      const std::string plan = j["plan"];
      SCOPED_TRACE(name + " " + j["id"].get<std::string>());
      if (stem.starts_with("tpe_focus")) {
        EXPECT_FALSE(plan::parse_source_plan(plan, "#So").steps.empty());
      } else if (stem.starts_with("rewoo")) {
        EXPECT_FALSE(plan::parse_source_plan(plan, "#E").steps.empty());
      } else if (stem.starts_with("tpe_")) {
        EXPECT_FALSE(plan::parse_strategy_plan(plan).steps.empty());
      } else if (stem.starts_with("chameleon_")) {
        const std::string prefix = *kind == DatasetKind::Focus ? "Modules: " : "Strategies: ";
        EXPECT_FALSE(plan::parse_module_list(prefix + plan).modules.empty());
      } else if (stem.starts_with("react_")) {
        std::string step;
        bool finished = false;
        for (const auto& line : text::split_lines(plan)) {
          const std::string_view l = line.text;
          if (l.starts_with("Observation:")) continue;
          step += std::string(l) + "\n";
          if (l.starts_with("Action:")) {
            const auto s = plan::parse_react_step(step);
            finished = std::holds_alternative<plan::Finish>(s.action) ||
                       (std::holds_alternative<plan::StrategyCall>(s.action) &&
                        std::get<plan::StrategyCall>(s.action).name == "Response");
            step.clear();
          }
        }
        EXPECT_TRUE(finished);
      } else {
        continue;
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 20u);
}

TEST(Catalog, TemplatesExistForApplicablePairs) {
  for (auto m : {Method::Tpe, Method::Cot, Method::React, Method::Rewoo, Method::Chameleon, Method::CueCot}) {
    for (auto k : {DatasetKind::Focus, DatasetKind::Cima, DatasetKind::PsyQA}) {
      if (method_applicable(m, k)) EXPECT_NO_THROW((void)load_template(m, k));
    }
  }
}

TEST(Resources, OverrideDirectoryWins) {
  TempDir dir("resources");
  std::filesystem::create_directories(dir.path() / "toolsets");
  testing_support::write_file(dir.path() / "toolsets" / "extra.json",
                              R"({"kind": "STRATEGY", "tools": [{"name": "Echo", "description": "Repeat."}]})");
  const ResourceStore store(dir.path());
  EXPECT_EQ(load_toolset("extra", store).tools()[0].name, "Echo");
  const auto names = store.list("toolsets/");
  EXPECT_NE(std::find(names.begin(), names.end(), "toolsets/extra.json"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "toolsets/focus.json"), names.end());
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_FALSE(ResourceStore::builtin().find("toolsets/extra.json").has_value());
  EXPECT_EQ(error_of([] { (void)ResourceStore::builtin().get("nope"); }).kind(), ErrorKind::IoError);
}

RunRecord rich_record() {
  RunRecord r;
  r.sample_id = "focus-newton";
  r.method = Method::Tpe;
  r.dataset_kind = DatasetKind::Focus;
  r.thought = Thought{"Internal status: wants the name."};
  r.raw_plan_text = "Plan: p\n#So1 = PERSONA[context]\nPlan: d\n#So2 = DOCUMENT[#So1 Newton]";
  r.parsed_plan = plan::PlanProgram(plan::parse_source_plan(r.raw_plan_text, "#So"));
  Evidence ev{"#So1", "PERSONA", "USER: hi", {{"PERSONA-1", "I live in Auckland.", 1.25}}};
  r.evidence.bind(ev);
  r.evidence.bind(Fragment{"#St1", "Hint", "box is scatola."});
  r.response = "It's called Newton.";
  r.usages.push_back({"gpt-3.5-turbo", "replay", 120, 30, 0});
  r.cost_usd = Usd::parse("0.000330");
  r.flags = {"thinker_skipped"};
  r.error = RecordError{ErrorKind::PlanParseFailure, "bad plan"};
  return r;
}

TEST(Records, RoundTripAllVariants) {
  const auto r = rich_record();
  EXPECT_EQ(record_from_json(record_to_json(r)), r);
  EXPECT_EQ(record_to_json(record_from_json(record_to_json(r))), record_to_json(r));
  const auto j = json::parse(record_to_json(r));
  EXPECT_EQ(j["cost_usd"], "0.000330");

  auto strat = rich_record();
  strat.parsed_plan = plan::PlanProgram(plan::parse_strategy_plan("Plan: Hint\nDo: x"));
  EXPECT_EQ(record_from_json(record_to_json(strat)), strat);
  strat.parsed_plan = plan::PlanProgram(plan::parse_module_list("Strategies: ['Hint', 'Question']"));
  EXPECT_EQ(record_from_json(record_to_json(strat)), strat);
  plan::ReActTrace trace;
  trace.steps.push_back({"look", plan::ToolCall{"Knowledge", "New Zealand"}, "obs"});
  trace.steps.push_back({"hint", plan::StrategyCall{"Hint"}, ""});
  trace.steps.push_back({"done", plan::Finish{"answer [x]"}, ""});
  strat.parsed_plan = plan::PlanProgram(trace);
  EXPECT_EQ(record_from_json(record_to_json(strat)), strat);
}

TEST(Records, MinimalAndCjkRoundTrip) {
  RunRecord r;
  r.sample_id = "psyqa-sleep";
  r.dataset_kind = DatasetKind::PsyQA;
  r.response = "抱抱你，慢慢来。";
  const auto line = record_to_json(r);
  EXPECT_NE(line.find("抱抱你，慢慢来。"), std::string::npos);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(record_from_json(line), r);
  EXPECT_EQ(error_of([] { (void)record_from_json("{}"); }).kind(), ErrorKind::SchemaViolation);
}

TEST(Records, FileRoundTrip) {
  TempDir dir("records");
  const auto path = dir.path() / "out.jsonl";
  export_records({}, path);
  EXPECT_TRUE(load_records(path).empty());
  RunRecord cjk;
  cjk.sample_id = "x";
  cjk.response = "我很难过";
  const std::vector<RunRecord> recs{rich_record(), cjk};
  export_records(recs, path);
  EXPECT_EQ(load_records(path), recs);
  const std::string bytes = testing_support::read_file(path);
  EXPECT_EQ(std::count(bytes.begin(), bytes.end(), '\n'), 2);
  EXPECT_EQ(error_of([] { (void)load_records("/nonexistent/r.jsonl"); }).kind(), ErrorKind::IoError);
}

}  // namespace
}  // namespace conductor::data
