// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "conductor/core/decimal.hpp"
#include "conductor/core/errors.hpp"
#include "conductor/core/prompt.hpp"
#include "conductor/core/render.hpp"
#include "conductor/core/text.hpp"
#include "conductor/core/types.hpp"
#include "conductor/data/catalog.hpp"

namespace conductor {
namespace {

Dialogue focus_dialogue(std::vector<std::pair<Role, std::string>> turns) {
  std::vector<Utterance> u;
  for (auto& [r, t] : turns) u.push_back({r, t});
  return Dialogue("d", DatasetKind::Focus, std::move(u));
}

TEST(RenderDialogue, TwoTurnFocusJoinedByTab) {
  const auto d = focus_dialogue({{Role::User, "What is the geography of this place?"},
                                 {Role::System, "The Arctic Cordillera is geographically diverse."},
                                 {Role::User, "Tell me more."}});
  EXPECT_EQ(render_dialogue(d),
            "USER: What is the geography of this place?\tSYSTEM: The Arctic Cordillera is geographically "
            "diverse.\tUSER: Tell me more.");
}

TEST(RenderDialogue, SingleUtterance) {
  EXPECT_EQ(render_dialogue(focus_dialogue({{Role::User, "Hi"}})), "USER: Hi");
}

TEST(RenderDialogue, CimaLabels) {
  const Dialogue d("c", DatasetKind::Cima,
                   {{Role::System, "Green is verde. Please try to fill in the blank in Italian."},
                    {Role::User, "what is the word for green?"}});
  EXPECT_EQ(render_dialogue(d),
            "Teacher: Green is verde. Please try to fill in the blank in Italian.\tStudent: what is the word for "
            "green?");
}

TEST(RenderDialogue, RoundTripsOnRandomDialogues) {
  std::mt19937 rng(7);
  const RoleStyle style = default_role_style(DatasetKind::Focus);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> turns(1, 6);
    const int n = turns(rng);
    std::vector<Utterance> u;
    for (int i = 0; i < n; ++i) {
      std::string text;
      std::uniform_int_distribution<int> len(1, 20);
      std::uniform_int_distribution<int> ch(32, 126);
      for (int j = len(rng); j > 0; --j) text.push_back(static_cast<char>(ch(rng)));
      u.push_back({i == n - 1 || i % 2 == 0 ? Role::User : Role::System, text});
    }
    const Dialogue d("r", DatasetKind::Focus, u);
    const std::string rendered = render_dialogue(d, style);
    std::vector<Utterance> back;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = rendered.find('\t', start);
      const std::string seg = rendered.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
      const std::size_t colon = seg.find(": ");
      ASSERT_NE(colon, std::string::npos);
      const auto role = style.role_of(seg.substr(0, colon));
      ASSERT_TRUE(role.has_value());
      back.push_back({*role, seg.substr(colon + 2)});
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    EXPECT_EQ(back, u);
  }
}

TEST(Dialogue, RejectsEmpty) {
  EXPECT_THROW(Dialogue("x", DatasetKind::Focus, {}), Error);
}

TEST(RenderToolset, FocusSourceSet) {
  const ToolSet ts = data::load_toolset("focus");
  const std::string doc = render_toolset(ts, false);
  EXPECT_TRUE(doc.starts_with("- PERSONA: This knowledge base stores personal preferences")) << doc;
  EXPECT_NE(doc.find("\n- DOCUMENT: This knowledge base stores background knowledge"), std::string::npos) << doc;
}

TEST(RenderToolset, EmptyToolset) { EXPECT_EQ(render_toolset(ToolSet{}, true), ""); }

TEST(RenderToolset, CimaStrategySetHasFiveLines) {
  const ToolSet ts = data::load_toolset("cima");
  const std::string doc = render_toolset(ts, false);
  EXPECT_TRUE(doc.starts_with("- Hint: The teacher provides knowledge")) << doc;
  EXPECT_EQ(std::count(doc.begin(), doc.end(), '\n'), 4);
}

TEST(RenderToolset, LineCountEqualsToolCountWithoutExamples) {
  for (const char* name : {"focus", "cima", "psyqa", "rewoo_focus", "chameleon_focus"}) {
    const ToolSet ts = data::load_toolset(name);
    const std::string doc = render_toolset(ts, false);
    EXPECT_EQ(text::split_lines(doc).size(), ts.tools().size()) << name;
  }
}

TEST(RenderToolset, ExamplesFollowTheirTool) {
  const ToolSet ts(ToolKind::Source, {{"A", "first", {{"q", "r"}}, ToolKind::Source, "", {}},
                                      {"B", "second", {}, ToolKind::Source, "", {}}});
  EXPECT_EQ(render_toolset(ts, true), "- A: first\n  Input: q\n  Output: r\n- B: second");
  EXPECT_EQ(render_toolset(ts, ToolDocOptions{false, false}), "- A\n- B");
}

TEST(AssemblePrompt, ThinkerWithoutDemosOrToolset) {
  const PersonaSpec p{PersonaRole::Thinker, "You are a thinker."};
  PromptLayout layout;
  layout.cue = "Thought:";
  const std::string out = assemble_prompt(p, std::nullopt, {}, "USER: Hi", {}, layout);
  EXPECT_EQ(out, "You are a thinker.\n\nDialogue: USER: Hi\nThought:");
}

TEST(AssemblePrompt, FullLayoutOrder) {
  const PersonaSpec p{PersonaRole::Planner, "P"};
  PromptLayout layout;
  layout.toolset_header = "Source Set:";
  layout.demo_header = "Examples:";
  layout.continuation = "Thought: t";
  layout.cue = "Plan:";
  const std::vector<std::string> demos = {"D1", "D2"};
  const std::vector<LabeledSection> extras = {{"Source Knowledge:", "PERSONA: x"}};
  EXPECT_EQ(assemble_prompt(p, std::string("- A: a"), demos, "USER: u", extras, layout),
            "P\n\nSource Set:\n- A: a\n\nExamples:\n\nD1\n\nD2\n\nSource Knowledge:\nPERSONA: x\n\nDialogue: USER: "
            "u\nThought: t\nPlan:");
}

TEST(AssemblePrompt, EvidencePrecedesDialogue) {
  const PersonaSpec p{PersonaRole::Executor, "E"};
  PromptLayout layout;
  layout.cue = "Response:";
  const std::vector<LabeledSection> extras = {{"Source Knowledge:", "DOCUMENT: Newton"}};
  const std::string out = assemble_prompt(p, std::nullopt, {}, "USER: where", extras, layout);
  EXPECT_LT(out.find("Source Knowledge:"), out.find("Dialogue:"));
}

TEST(AssemblePrompt, MissingToolsetSection) {
  PromptLayout layout;
  layout.toolset_header = "Source Set:";
  try {
    (void)assemble_prompt({PersonaRole::Planner, "P"}, std::nullopt, {}, "USER: u", {}, layout);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingSection);
  }
}

TEST(AssemblePrompt, Pure) {
  PromptLayout layout;
  layout.cue = "Thought:";
  const std::vector<std::string> demos = {"x"};
  const auto a = assemble_prompt({PersonaRole::Thinker, "P"}, std::nullopt, demos, "USER: u", {}, layout);
  const auto b = assemble_prompt({PersonaRole::Thinker, "P"}, std::nullopt, demos, "USER: u", {}, layout);
  EXPECT_EQ(a, b);
}

TEST(FillSlots, OptionalLineDroppedRequiredThrows) {
  SlotMap slots{{"a", "1"}, {"empty", ""}};
  EXPECT_EQ(fill_slots("x {a}\ny {b}\nz {empty}\nw", slots), "x 1\nw");
  EXPECT_EQ(fill_slots("{a!}-{a}", slots), "1-1");
  try {
    (void)fill_slots("{b!}", slots);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingSection);
  }
}

TEST(RenderDemo, AblationDropsField) {
  Demonstration d{"1", "USER: hi", std::string("T"), std::string("Plan: p"), std::string("R"), "tpe"};
  const std::string pattern = "Dialogue: {dialogue!}\nThought: {thought}\n{plan}\nResponse: {response}";
  EXPECT_EQ(render_demo(pattern, d), "Dialogue: USER: hi\nThought: T\nPlan: p\nResponse: R");
  EXPECT_EQ(render_demo(pattern, d, DemoFields{false, true, true}), "Dialogue: USER: hi\nPlan: p\nResponse: R");
}

TEST(PromptTemplate, ParsesSectionsAndComments) {
  const std::string text =
      "# SPDX-License-Identifier: Apache-2.0\n# conductor prompt template v1\n"
      "@@ planner.role\nplanner\n@@ planner.persona\nLine one.\n\nLine two.\n\n"
      "@@ planner.cue\nPlan:\n@@ executor.role\nexecutor\n@@ executor.extras_label\nSource Knowledge:\n";
  const auto tpl = PromptTemplate::parse(text, "t");
  EXPECT_EQ(tpl.version(), 1);
  EXPECT_EQ(tpl.role("planner").persona, "Line one.\n\nLine two.");
  EXPECT_EQ(tpl.role("planner").persona_role, PersonaRole::Planner);
  EXPECT_EQ(tpl.role("planner").cue, "Plan:");
  EXPECT_EQ(tpl.role("executor").extras_label, "Source Knowledge:");
  EXPECT_FALSE(tpl.has_role("thinker"));
  EXPECT_THROW((void)tpl.role("thinker"), Error);
}

TEST(PromptTemplate, RejectsMalformed) {
  EXPECT_THROW(PromptTemplate::parse("stray text\n@@ a.role\nthinker\n", "t"), Error);
  EXPECT_THROW(PromptTemplate::parse("@@ nodot\nx\n", "t"), Error);
  EXPECT_THROW(PromptTemplate::parse("@@ a.bogus\nx\n", "t"), Error);
  EXPECT_THROW(PromptTemplate::parse("# conductor prompt template vX\n", "t"), Error);
}

TEST(PromptTemplate, EveryShippedTemplateParses) {
  for (Method m : {Method::Tpe, Method::Cot, Method::React, Method::Rewoo, Method::Chameleon, Method::CueCot}) {
    for (DatasetKind k : {DatasetKind::Focus, DatasetKind::Cima, DatasetKind::PsyQA}) {
      if (!data::method_applicable(m, k)) continue;
      const auto tpl = data::load_template(m, k);
      EXPECT_EQ(tpl.version(), 1) << tpl.name();
    }
  }
}

TEST(Usd, ParseAndRender) {
  EXPECT_EQ(Usd::parse("0.002").to_string(6), "0.002000");
  EXPECT_EQ(Usd::parse("12").to_string(2), "12.00");
  EXPECT_EQ(Usd::parse("-1.5").to_string(1), "-1.5");
  EXPECT_EQ(Usd::parse("0.0000005").to_string(6), "0.000000");
  EXPECT_EQ(Usd::parse("0.0000015").to_string(6), "0.000002");
  EXPECT_EQ(Usd::parse("0.0000025").to_string(6), "0.000002");
  EXPECT_THROW(Usd::parse("abc"), Error);
  EXPECT_THROW(Usd::parse("0.0000000000000001"), Error);
  EXPECT_EQ(Usd::parse("0.1") + Usd::parse("0.2"), Usd::parse("0.3"));
}

TEST(Text, SplitLinesAndCodepoints) {
  const auto lines = text::split_lines("a\r\nb\n\nc");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].text, "a");
  EXPECT_EQ(lines[1].offset, 3u);
  EXPECT_EQ(lines[3].text, "c");
  EXPECT_TRUE(text::split_lines("").empty());
  std::size_t pos = 0;
  EXPECT_EQ(text::next_codepoint("我", pos), U'我');
  EXPECT_EQ(pos, 3u);
  EXPECT_EQ(text::trim("  x \t"), "x");
}

TEST(Errors, KindNamesRoundTrip) {
  const Error e(ErrorKind::ReplayMiss, "abc");
  EXPECT_EQ(std::string(e.what()), "ReplayMiss: abc");
  EXPECT_EQ(error_kind_from_string("UnknownTool"), ErrorKind::UnknownTool);
  EXPECT_FALSE(error_kind_from_string("Nope").has_value());
  const ParseError pe(12, "bad line");
  EXPECT_EQ(pe.kind(), ErrorKind::ParseError);
  EXPECT_EQ(pe.position(), 12u);
}

TEST(Types, MethodAndKindNames) {
  EXPECT_EQ(parse_method("cuecot"), Method::CueCot);
  EXPECT_EQ(parse_dataset_kind("psyqa"), DatasetKind::PsyQA);
  EXPECT_FALSE(parse_method("gpt").has_value());
}

}  // namespace
}  // namespace conductor
