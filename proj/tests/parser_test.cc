// Copyright 2026 The proeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proeval/parser.h"

#include <random>

#include <gtest/gtest.h>

#include "golden.h"
#include "proeval/sample_io.h"
#include "test_support.h"

namespace proeval {
namespace {

const VocabularyStore& v() { return testing::vocab(); }

TEST(Parser, ClarificationDemonstrations) {
  auto p = parse_clarification(SchemeKind::kProactive, golden::kClarificationDemoProactive);
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.act, "ask_clarification");
  EXPECT_EQ(p.response, "Do you mean the first book?");
  EXPECT_FALSE(p.thought.has_value());

  p = parse_clarification(SchemeKind::kProCoT, golden::kClarificationDemoProCoT);
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.act, "ask_clarification");
  EXPECT_EQ(p.thought, "There are two books that book that Angie's mother found. It is "
                       "uncertain which book is referred to.");
  EXPECT_EQ(p.response, "Do you mean the first book?");
}

TEST(Parser, ClarificationAnswer) {
  auto p = parse_clarification(
      SchemeKind::kProCoT,
      "Only one book is green. Therefore, the question is not ambiguous. The answer is "
      "\"Green\"");
  ASSERT_TRUE(p.parsed());
  EXPECT_EQ(p.act, "direct_answer");
  EXPECT_EQ(p.response, "Green");
}

TEST(Parser, ClarificationCurlyQuotesAndCase) {
  auto p = parse_clarification(SchemeKind::kProactive,
                               "the clarifying question is \xE2\x80\x9CWhich one?\xE2\x80\x9D");
  ASSERT_TRUE(p.parsed());
  EXPECT_EQ(p.response, "Which one?");
}

TEST(Parser, ClarificationMissingMarker) {
  auto p = parse_clarification(SchemeKind::kProactive, "Green, I think.");
  EXPECT_FALSE(p.parsed());
  EXPECT_FALSE(p.act.has_value());
  EXPECT_FALSE(p.error_reason.empty());
}

TEST(Parser, StandardIsVerbatim) {
  auto p = parse_output(TaskKind::kClarification, SchemeKind::kStandard, "  Green.  ", v());
  ASSERT_TRUE(p.parsed());
  EXPECT_EQ(p.response, "Green.");
  EXPECT_FALSE(p.act.has_value());
}

TEST(Parser, TargetDemonstrations) {
  auto p = parse_target(SchemeKind::kProactive, golden::kTargetDemoProactive);
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.next_topics, (std::vector<std::string>{"eat", "meat"}));
  EXPECT_EQ(p.response,
            "I do not. But I do have a favorite meat since that is all I eat exclusively.");

  p = parse_target(SchemeKind::kProCoT, golden::kTargetDemoProCoT);
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.current_topics, (std::vector<std::string>{"season", "time", "year"}));
  EXPECT_EQ(p.next_topics, (std::vector<std::string>{"eat", "meat"}));
}

TEST(Parser, TargetMissingBrackets) {
  auto p = parse_target(SchemeKind::kProactive, "The next topics are eat, meat. The response is hi");
  EXPECT_FALSE(p.parsed());
}

TEST(Parser, NegotiationDemonstrations) {
  const std::vector<std::string> strategies = {"certainty_words", "propose_price",
                                               "show_dominance"};
  auto p = parse_negotiation(SchemeKind::kProactive, golden::kNegotiationDemoProactive, v());
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.strategies, strategies);
  EXPECT_EQ(p.act, "counter-price");
  EXPECT_EQ(p.response, "I think the lowest I would want to go is 8.");

  p = parse_negotiation(SchemeKind::kProCoT, golden::kNegotiationDemoProCoT, v());
  ASSERT_TRUE(p.parsed()) << p.error_reason;
  EXPECT_EQ(p.thought, "The buyer proposes a low price, which is unacceptable. The next step "
                       "should assertively raise the bargain price.");
  EXPECT_EQ(p.strategies, strategies);
  EXPECT_EQ(p.act, "counter-price");
}

TEST(Parser, NegotiationUnknownStrategyKeptAside) {
  auto p = parse_negotiation(
      SchemeKind::kProactive,
      "The most appropriate set of negotiation strategies is [\"Propose price\", \"Telepathy\"] "
      "and the most appropriate dialogue act is [\"Accept the offer\"]. Based on the selected "
      "negotiation strategies and dialogue act, the response is \"Deal.\"",
      v());
  ASSERT_TRUE(p.parsed());
  EXPECT_EQ(p.strategies, (std::vector<std::string>{"propose_price"}));
  EXPECT_EQ(p.unrecognized_strategies, (std::vector<std::string>{"Telepathy"}));
  EXPECT_EQ(p.act, "accept");
}

TEST(Parser, NegotiationActCardinality) {
  auto p = parse_negotiation(
      SchemeKind::kProactive,
      "The most appropriate set of negotiation strategies is [] and the most appropriate "
      "dialogue act is [\"Accept the offer\", \"Answer a question\"]. Based on the selected "
      "negotiation strategies and dialogue act, the response is \"Deal.\"",
      v());
  EXPECT_FALSE(p.parsed());
  EXPECT_NE(p.error_reason.find("cardinality"), std::string::npos) << p.error_reason;
}

TEST(Parser, NeverThrowsOnArbitraryInput) {
  std::mt19937_64 rng(17);
  const std::string alphabet = "[]\"',. abcTheisnotambiguous:\n";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int n = static_cast<int>(rng() % 80);
    for (int k = 0; k < n; ++k) s += alphabet[rng() % alphabet.size()];
    for (TaskKind t : {TaskKind::kClarification, TaskKind::kTargetGuided, TaskKind::kNegotiation}) {
      for (SchemeKind sc : {SchemeKind::kStandard, SchemeKind::kProactive, SchemeKind::kProCoT}) {
        EXPECT_NO_THROW(parse_output(t, sc, s, v()));
      }
    }
  }
}

std::string sentence(std::mt19937_64& rng) {
  std::string s = testing::random_sentence(rng, 2, 10);
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + ".";
}

TEST(Parser, RenderParseRoundTripProperty) {
  std::mt19937_64 rng(23);
  const auto acts = v().acts(TaskKind::kNegotiation).tokens();
  const auto strategy_tokens = v().strategies().tokens();
  for (int i = 0; i < 300; ++i) {
    const TaskKind task = static_cast<TaskKind>(i % 3);
    const SchemeKind scheme = i % 2 ? SchemeKind::kProactive : SchemeKind::kProCoT;
    ParsedOutput out;
    out.response = sentence(rng);
    if (scheme == SchemeKind::kProCoT && task != TaskKind::kTargetGuided) {
      out.thought = sentence(rng);
    }
    switch (task) {
      case TaskKind::kClarification:
        out.act = std::string(rng() % 2 ? kActAskClarification : kActDirectAnswer);
        break;
      case TaskKind::kTargetGuided: {
        std::vector<std::string> next, current;
        for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k) {
          next.push_back(testing::random_sentence(rng, 1, 2));
          current.push_back(testing::random_sentence(rng, 1, 1));
        }
        out.next_topics = next;
        if (scheme == SchemeKind::kProCoT) out.current_topics = current;
        break;
      }
      case TaskKind::kNegotiation: {
        out.act = acts[rng() % acts.size()];
        std::vector<std::string> st;
        for (int k = 0; k < static_cast<int>(rng() % 4); ++k) {
          st.push_back(strategy_tokens[rng() % strategy_tokens.size()]);
        }
        normalize_label_set(st);
        out.strategies = st;
        break;
      }
    }
    const std::string raw = render_completion(task, scheme, out, v());
    const ParsedOutput back = parse_output(task, scheme, raw, v());
    ASSERT_TRUE(back.parsed()) << raw << "\n" << back.error_reason;
    EXPECT_EQ(back.response, out.response) << raw;
    EXPECT_EQ(back.act, out.act) << raw;
    EXPECT_EQ(back.strategies, out.strategies) << raw;
    EXPECT_EQ(back.next_topics, out.next_topics) << raw;
    EXPECT_EQ(back.current_topics, out.current_topics) << raw;
    EXPECT_EQ(back.thought, out.thought) << raw;
  }
}

TEST(Parser, SplitBracketList) {
  EXPECT_EQ(split_bracket_list("\"a, b\", 'c', d,,"),
            (std::vector<std::string>{"a, b", "c", "d"}));
  EXPECT_TRUE(split_bracket_list("  ").empty());
}

TEST(Parser, GrammarMarkers) {
  const auto g = grammar_for(TaskKind::kNegotiation, SchemeKind::kProCoT);
  ASSERT_FALSE(g.markers.empty());
  EXPECT_EQ(g.markers.front(), "to reach this goal,");
  EXPECT_TRUE(grammar_for(TaskKind::kClarification, SchemeKind::kStandard).markers.empty());
}

std::vector<std::string> cents(const std::vector<Money>& m) {
  std::vector<std::string> out;
  for (const auto& x : m) out.push_back(x.to_string());
  return out;
}

TEST(Prices, Extraction) {
  EXPECT_EQ(cents(extract_prices("I think the lowest I would want to go is 8.")),
            (std::vector<std::string>{"8.00"}));
  EXPECT_EQ(cents(extract_prices("How about $1,250.50 or $900?")),
            (std::vector<std::string>{"1250.50", "900.00"}));
  EXPECT_EQ(cents(extract_prices("I'd pay 20 dollars for it")),
            (std::vector<std::string>{"20.00"}));
  EXPECT_TRUE(extract_prices("It is 3 years old and I placed 6th in the 100m dash").empty());
  EXPECT_TRUE(extract_prices("I have 2 kids").empty());
}

}  // namespace
}  // namespace proeval
