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

#include "proeval/selfplay.h"

#include <gtest/gtest.h>

#include "proeval/embedding.h"
#include "proeval/errors.h"
#include "test_support.h"

namespace proeval {
namespace {

SelfPlayConfig config(const std::string& id, const std::string& target,
                      const std::string& difficulty = "easy") {
  SelfPlayConfig c;
  c.sample_id = id;
  c.target = target;
  c.difficulty = difficulty;
  c.max_turns = 5;
  c.seed_context = {{Role::kUser, "Hi there, how was your day?"}};
  return c;
}

TEST(DetectTarget, WholeWordsOnly) {
  EXPECT_TRUE(detect_target("Do you like Dogs, or dog?", "dog"));
  EXPECT_FALSE(detect_target("I love hotdogs", "dog"));
  EXPECT_TRUE(detect_target("Ice-cream is great", "ice cream"));
  EXPECT_FALSE(detect_target("ice and cream", "ice cream"));
}

TEST(SelfPlayConfig, ValidationAndDigest) {
  SelfPlayConfig c = config("tgconv/0", "dog");
  EXPECT_NO_THROW(c.validate());
  const std::string d = c.digest();
  c.max_turns = 6;
  EXPECT_NE(c.digest(), d);
  c.target = "";
  EXPECT_THROW(c.validate(), Error);
  c = config("tgconv/0", "dog");
  c.max_turns = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(SelfPlay, StopsWhenTargetSaid) {
  LlmGateway sys(testing::scripted_config("sys"), testing::target_on_turn_backend({"dog"}, 2));
  LlmGateway usr(testing::scripted_config("usr"), testing::small_talk_user_backend());
  const Transcript t = run_selfplay(config("tgconv/0", "dog"), testing::library(), sys, usr);
  EXPECT_TRUE(t.success);
  EXPECT_EQ(t.success_turn, 2);
  EXPECT_EQ(t.system_turns, 2);
  // system, user, system
  ASSERT_EQ(t.turns.size(), 3u);
  EXPECT_EQ(t.turns[0].speaker, Role::kSystem);
  EXPECT_EQ(t.turns[1].speaker, Role::kUser);
  EXPECT_EQ(t.secrecy_checks, 1);
  EXPECT_FALSE(t.error.has_value());
}

TEST(SelfPlay, GivesUpAfterMaxTurns) {
  LlmGateway sys(testing::scripted_config("sys"), testing::target_on_turn_backend({}, 1));
  LlmGateway usr(testing::scripted_config("usr"), testing::small_talk_user_backend());
  const Transcript t = run_selfplay(config("tgconv/1", "dog"), testing::library(), sys, usr);
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.system_turns, 5);
  EXPECT_FALSE(t.success_turn.has_value());
}

TEST(SelfPlay, UserPromptNeverContainsTarget) {
  std::vector<std::string> user_prompts;
  LlmGateway sys(testing::scripted_config("sys"), testing::target_on_turn_backend({}, 1));
  LlmGateway usr(testing::scripted_config("usr"),
                 std::make_shared<CallbackProvider>([&](const std::string& p) {
                   user_prompts.push_back(p);
                   return std::string("User: \"Sure, sounds good.\"");
                 }),
                 std::nullopt, 1);
  const Transcript t =
      run_selfplay(config("tgconv/2", "astronomy"), testing::library(), sys, usr);
  ASSERT_FALSE(user_prompts.empty());
  for (const auto& p : user_prompts) EXPECT_EQ(p.find("astronomy"), std::string::npos);
  // Reply cleanup strips the speaker prefix and wrapping quotes.
  EXPECT_EQ(t.turns[1].text, "Sure, sounds good.");
}

TEST(SelfPlay, UtterancesMentioningTargetAreNotLeaks) {
  // Only the simulator's own instructions must keep the target secret.
  SelfPlayConfig c = config("tgconv/3", "dog");
  c.seed_context = {{Role::kUser, "My dog is sick."}};
  c.max_turns = 2;
  LlmGateway sys(testing::scripted_config("sys"), testing::target_on_turn_backend({}, 1));
  LlmGateway usr(testing::scripted_config("usr"), testing::small_talk_user_backend());
  const Transcript t = run_selfplay(c, testing::library(), sys, usr);
  EXPECT_EQ(t.secrecy_checks, 1);
  EXPECT_FALSE(t.success);
}

TEST(SelfPlay, ProviderFailureEndsDialogue) {
  LlmGateway sys(testing::scripted_config("sys"),
                 std::make_shared<CallbackProvider>(
                     [](const std::string&) -> std::string { throw TimeoutError("slow"); }));
  LlmGateway usr(testing::scripted_config("usr"), testing::small_talk_user_backend());
  const Transcript t = run_selfplay(config("tgconv/4", "dog"), testing::library(), sys, usr);
  EXPECT_FALSE(t.success);
  ASSERT_TRUE(t.error.has_value());
}

TEST(SelfPlay, AggregateAndTranscriptFiles) {
  std::vector<SelfPlayConfig> cfgs = {config("a", "dog", "easy"), config("b", "cat", "hard"),
                                      config("c", "sun", "hard")};
  LlmGateway sys(testing::scripted_config("sys"),
                 testing::target_on_turn_backend({"dog", "cat"}, 3));
  LlmGateway usr(testing::scripted_config("usr"), testing::small_talk_user_backend());
  const auto ts = run_selfplay_batch(cfgs, testing::library(), sys, usr, 2);
  ASSERT_EQ(ts.size(), 3u);
  EXPECT_EQ(ts[2].sample_id, "c");
  HashingEmbedding e;
  const SelfPlayAggregate agg = aggregate_selfplay(ts, e);
  EXPECT_NEAR(agg.overall.success_rate, 200.0 / 3, 1e-12);
  EXPECT_EQ(*agg.overall.mean_turns, 3.0);
  EXPECT_EQ(agg.by_difficulty.at("hard").successes, 1u);
  EXPECT_TRUE(agg.overall.coherence.has_value());

  testing::ScratchDir dir("transcripts");
  const auto path = write_transcript(dir.path(), ts[0], cfgs[0]);
  EXPECT_EQ(path.filename().string(), "a-" + cfgs[0].digest().substr(0, 12) + ".json");
  const auto back = nlohmann::json::parse(testing::read_file(path)).get<Transcript>();
  EXPECT_EQ(back.turns, ts[0].turns);
  EXPECT_EQ(back.success_turn, ts[0].success_turn);
}

}  // namespace
}  // namespace proeval
