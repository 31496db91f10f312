// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "conductor/core/types.hpp"
#include "conductor/plan/grammar.hpp"
#include "conductor/plan/program.hpp"

namespace conductor::plan {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

TEST(SourcePlan, PersonaThenDocument) {
  const auto p = parse_source_plan(
      "Plan: Search for personal memories about the place.\n#So1 = PERSONA[context]\n"
      "Plan: Search for more information about the place.\n#So2 = DOCUMENT[#So1]",
      "#So");
  ASSERT_EQ(p.steps.size(), 2u);
  EXPECT_EQ(p.steps[0].description, "Search for personal memories about the place.");
  EXPECT_EQ(p.steps[0].source_name, "PERSONA");
  EXPECT_EQ(p.steps[0].output_var, "So1");
  EXPECT_EQ(p.steps[0].query, QuerySpec{{ContextRef{}}});
  EXPECT_EQ(p.steps[1].source_name, "DOCUMENT");
  EXPECT_EQ(p.steps[1].output_var, "So2");
  EXPECT_EQ(p.steps[1].query, QuerySpec{{VarRef{"So1"}}});
}

TEST(SourcePlan, LiteralQuery) {
  const auto p = parse_source_plan(
      "Plan: Search for more information about the Arctic Cordillera.\n#So1 = DOCUMENT[The Arctic Cordillera]", "#So");
  ASSERT_EQ(p.steps.size(), 1u);
  EXPECT_EQ(p.steps[0].query, QuerySpec{{Literal{"The Arctic Cordillera"}}});
}

TEST(SourcePlan, RewooSigil) {
  const auto p = parse_source_plan(
      "#E1 = PERSONA[context]\nPlan: Search for more information about the place.\n#E2 = KNOWLEDGE[#E1]", "#E");
  ASSERT_EQ(p.steps.size(), 2u);
  EXPECT_EQ(p.steps[0].description, "");
  EXPECT_EQ(p.steps[1].source_name, "KNOWLEDGE");
  EXPECT_EQ(p.steps[1].query, QuerySpec{{VarRef{"E1"}}});
}

TEST(SourcePlan, MixedQueryAndThoughtPrefixIgnored) {
  const auto p = parse_source_plan(
      "Thought: the user forgot a name\nPlan: a\n#So1 = PERSONA[context]\nPlan: b\n#So2 = DOCUMENT[overview of "
      "#So1 today]\nThat is all.",
      "#So");
  ASSERT_EQ(p.steps.size(), 2u);
  EXPECT_EQ(p.steps[1].query, (QuerySpec{{Literal{"overview of"}, VarRef{"So1"}, Literal{"today"}}}));
}

TEST(SourcePlan, Errors) {
  EXPECT_EQ(kind_of([] { parse_source_plan("", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 = PERSONA context", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 PERSONA[context]", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 = PERSONA[]", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So2 = A[x]\n#So1 = B[y]", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("Plan: a\nPlan: b\n#So1 = A[x]", "#So"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 = A[#So2]\n#So2 = B[x]", "#So"); }), ErrorKind::DanglingReference);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 = A[#So1]", "#So"); }), ErrorKind::DanglingReference);
  EXPECT_EQ(kind_of([] { parse_source_plan("#So1 = A[x]", ""); }), ErrorKind::InvalidArgument);
}

TEST(SourcePlan, ParseErrorPointsAtLine) {
  try {
    parse_source_plan("Plan: a\n#So1 = PERSONA context", "#So");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(StrategyPlan, TwoSteps) {
  const auto p =
      parse_strategy_plan("Plan: Hint\nDo: box is scatola.\nPlan: Question\nDo: Do you remember how to say the plant?");
  EXPECT_EQ(p, (StrategyPlan{{{"Hint", "box is scatola."}, {"Question", "Do you remember how to say the plant?"}}}));
}

TEST(StrategyPlan, SingleStepAndDuplicatesKept) {
  EXPECT_EQ(parse_strategy_plan("Plan: Hint\nDo: la pianta e dentro la scatola verdeverde").steps.size(), 1u);
  const auto p = parse_strategy_plan("Plan: Hint\nDo: a\nPlan: Question\nDo: b\nPlan: Hint\nDo: c");
  ASSERT_EQ(p.steps.size(), 3u);
  EXPECT_EQ(p.steps[2].strategy_name, "Hint");
}

TEST(StrategyPlan, OrphanLines) {
  EXPECT_EQ(kind_of([] { parse_strategy_plan("Plan: Hint\nPlan: Question\nDo: x"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_strategy_plan("Do: x"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_strategy_plan("Plan: Hint"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_strategy_plan("nothing"); }), ErrorKind::ParseError);
}

TEST(ReActStep, ToolCall) {
  const auto s = parse_react_step(
      "Thought: I need to search for more information about the place.\nAction: Knowledge[The Arctic Cordillera]");
  EXPECT_EQ(s.thought, "I need to search for more information about the place.");
  EXPECT_EQ(s.action, ReActAction(ToolCall{"Knowledge", "The Arctic Cordillera"}));
}

TEST(ReActStep, FinishWithNestedBrackets) {
  const auto s = parse_react_step(
      "Thought: combine them\nAction: Finish[It's called Newton [a suburb] of Auckland City in New Zealand.]");
  EXPECT_EQ(s.action, ReActAction(Finish{"It's called Newton [a suburb] of Auckland City in New Zealand."}));
}

TEST(ReActStep, StrategyCall) {
  const auto s = parse_react_step("Thought: I need to provide a hint\nAction: Hint");
  EXPECT_EQ(s.action, ReActAction(StrategyCall{"Hint"}));
  EXPECT_EQ(parse_react_step("Action: Direct Guidance").action, ReActAction(StrategyCall{"Direct Guidance"}));
}

TEST(ReActStep, MissingAction) {
  EXPECT_EQ(kind_of([] { parse_react_step("Thought: hmm"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_react_step("Action:   "); }), ErrorKind::ParseError);
}

TEST(ModuleList, Forms) {
  EXPECT_EQ(parse_module_list("Modules: [\"Knowledge_Retrieval\", \"Answer_Generator\"]").modules,
            (std::vector<std::string>{"Knowledge_Retrieval", "Answer_Generator"}));
  EXPECT_EQ(parse_module_list("Strategies: ['Hint', 'Question']").modules,
            (std::vector<std::string>{"Hint", "Question"}));
  EXPECT_EQ(kind_of([] { parse_module_list("Modules: []"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_module_list("Modules: [\"a\""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_module_list("no list"); }), ErrorKind::ParseError);
}

TEST(SubstituteVars, Cases) {
  EvidenceStore store;
  store.bind(Evidence{"So1", "PERSONA", "q", {{"PERSONA-0", "I like living in a city.", 1.0}}});
  EXPECT_EQ(substitute_vars(QuerySpec{{VarRef{"So1"}}}, store, "ctx"), "I like living in a city.");
  EXPECT_EQ(substitute_vars(QuerySpec{{ContextRef{}}}, store, "USER: I know this place"), "USER: I know this place");
  EvidenceStore newton;
  newton.bind(Fragment{"So1", "", "Newton"});
  EXPECT_EQ(substitute_vars(QuerySpec{{Literal{"overview of"}, VarRef{"So1"}}}, newton, "c"), "overview of Newton");
  EXPECT_EQ(kind_of([&] { substitute_vars(QuerySpec{{VarRef{"So9"}}}, store, "c"); }), ErrorKind::UnboundVariable);
}

TEST(Validation, UnknownSourceAndStrategies) {
  const ToolSet sources(ToolKind::Source, {{"PERSONA", "p", {}, ToolKind::Source, "", {}},
                                           {"DOCUMENT", "d", {}, ToolKind::Source, "", {"KNOWLEDGE"}}});
  validate_source_plan(parse_source_plan("#So1 = KNOWLEDGE[x]", "#So"), sources);
  EXPECT_EQ(kind_of([&] { validate_source_plan(parse_source_plan("#So1 = WEB[x]", "#So"), sources); }),
            ErrorKind::UnknownTool);
  const ToolSet strategies(ToolKind::Strategy, {{"Hint", "h", {}, ToolKind::Strategy, "", {}}});
  EXPECT_EQ(unknown_strategies(parse_strategy_plan("Plan: Hint\nDo: a\nPlan: Hint Confirmation\nDo: b"), strategies),
            (std::vector<std::string>{"Hint Confirmation"}));
}

TEST(PlanLabels, Forms) {
  EXPECT_EQ(plan_labels(PlanProgram(parse_strategy_plan("Plan: Hint\nDo: a\nPlan: Question\nDo: b\nPlan: Hint\nDo: c"))),
            (std::vector<std::string>{"Hint", "Question", "Hint"}));
  EXPECT_EQ(plan_labels(PlanProgram(ModulePlan{{"Hint"}})), (std::vector<std::string>{"Hint"}));
}

SourcePlanProgram random_program(std::mt19937& rng, const std::string& sigil) {
  static const std::vector<std::string> kWords = {"place", "Newton", "the", "Arctic", "memory", "x1", "a-b", "it's"};
  static const std::vector<std::string> kSources = {"PERSONA", "DOCUMENT", "KNOWLEDGE", "Web_Search"};
  std::uniform_int_distribution<int> steps(1, 5);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<std::size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<std::size_t> src(0, kSources.size() - 1);
  SourcePlanProgram p;
  p.sigil = sigil;
  const std::string name = sigil_name(sigil);
  int idx = 0;
  for (int s = steps(rng); s > 0; --s) {
    idx += 1 + coin(rng);
    SourcePlanStep step;
    if (coin(rng) != 0) step.description = kWords[word(rng)] + " " + kWords[word(rng)] + ".";
    step.source_name = kSources[src(rng)];
    step.output_var = name + std::to_string(idx);
    if (coin(rng) == 0) {
      step.query.parts.emplace_back(ContextRef{});
    } else {
      bool last_literal = false;
      for (int parts = 1 + coin(rng); parts > 0; --parts) {
        if (!p.steps.empty() && coin(rng) < 2) {
          std::uniform_int_distribution<std::size_t> prior(0, p.steps.size() - 1);
          step.query.parts.emplace_back(VarRef{p.steps[prior(rng)].output_var});
          last_literal = false;
        } else if (!last_literal) {
          step.query.parts.emplace_back(Literal{kWords[word(rng)] + " " + kWords[word(rng)]});
          last_literal = true;
        }
      }
    }
    p.steps.push_back(std::move(step));
  }
  return p;
}

TEST(SourcePlan, RenderParseRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string sigil = i % 2 == 0 ? "#So" : "#E";
    const auto program = random_program(rng, sigil);
    const std::string text = render_source_plan(program);
    EXPECT_EQ(parse_source_plan(text, sigil), program) << text;
  }
}

TEST(Parsers, FuzzNeverCrashes) {
  std::mt19937 rng(3);
  const std::vector<std::string> pieces = {"Plan:", "Do:", "Thought:", "Action:", "Modules:", "Strategies:", "#So",
                                           "#E", "1", "2", "=", "[", "]", "context", " ", "\n", "'", "\"", ",",
                                           "Finish", "PERSONA", "我", "\xff", "\t", "#So1 = ", "Hint"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 30);
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    for (int n = len(rng); n > 0; --n) s += pieces[pick(rng)];
    try {
      (void)parse_source_plan(s, "#So");
    } catch (const Error&) {
    }
    try {
      (void)parse_strategy_plan(s);
    } catch (const Error&) {
    }
    try {
      (void)parse_react_step(s);
    } catch (const Error&) {
    }
    try {
      (void)parse_module_list(s);
    } catch (const Error&) {
    }
  }
  SUCCEED();
}

}  // namespace
}  // namespace conductor::plan
