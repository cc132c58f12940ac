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

#include "proeval/metrics.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "proeval/embedding.h"
#include "proeval/errors.h"
#include "test_support.h"

namespace proeval {
namespace {

TEST(Prf, HandCounts) {
  // tp=2, fp=1, fn=3
  const std::vector<bool> gold = {true, true, true, true, true, false, false};
  const std::vector<bool> pred = {true, true, false, false, false, true, false};
  const Prf r = precision_recall_f1(gold, pred);
  EXPECT_DOUBLE_EQ(r.precision, 100.0 * 2 / 3);
  EXPECT_DOUBLE_EQ(r.recall, 40.0);
  EXPECT_NEAR(r.f1, 50.0, 1e-12);
}

TEST(Prf, ZeroDivisionAndErrors) {
  const Prf r = precision_recall_f1(std::vector<bool>{false, false}, std::vector<bool>{false, false});
  EXPECT_EQ(r.precision, 0);
  EXPECT_EQ(r.f1, 0);
  EXPECT_THROW(precision_recall_f1(std::vector<BinaryPrediction>{}), ValidationError);
  EXPECT_THROW(precision_recall_f1({{"a", true, true}, {"a", false, true}}), ValidationError);
}

TEST(Prf, F1FromPrecisionRecall) {
  EXPECT_NEAR(f1_from_precision_recall(19.0, 26.6), 22.1667, 1e-4);
  EXPECT_EQ(f1_from_precision_recall(0, 0), 0);
}

TEST(MultilabelF1, AveragingModes) {
  const std::vector<std::string> vocab = {"a", "b", "c"};
  // a: tp=1 fp=0 fn=1; b: tp=1 fp=1 fn=0; c: no support, fp=1.
  const std::vector<LabelSetPrediction> s = {{{"a", "b"}, {"a", "b"}},
                                             {{"a"}, {"b", "c"}}};
  const double fa = 100.0 * 2 / 3, fb = 100.0 * 2 / 3;
  EXPECT_NEAR(multilabel_f1(s, vocab, Average::kMacro), (fa + fb + 0) / 3, 1e-9);
  EXPECT_NEAR(multilabel_f1(s, vocab, Average::kWeighted), (2 * fa + 1 * fb) / 3, 1e-9);
  // pooled tp=2 fp=2 fn=1
  EXPECT_NEAR(multilabel_f1(s, vocab, Average::kMicro), 100.0 * 4 / 7, 1e-9);
  EXPECT_THROW(multilabel_f1({{{"z"}, {}}}, vocab, Average::kMicro), ValidationError);
}

TEST(MultilabelF1, MicroEqualsPooledBinaryProperty) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> vocab = {"p", "q", "r", "s", "t"};
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<LabelSetPrediction> samples;
    std::vector<bool> g, p;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      LabelSetPrediction s;
      for (const auto& l : vocab) {
        const bool gi = rng() % 3 == 0, pi = rng() % 3 == 0;
        if (gi) s.gold.push_back(l);
        if (pi) s.predicted.push_back(l);
        g.push_back(gi);
        p.push_back(pi);
      }
      samples.push_back(s);
    }
    EXPECT_NEAR(multilabel_f1(samples, vocab, Average::kMicro), oracle::pooled_f1(g, p), 1e-9);
  }
}

TEST(Auc, KnownValues) {
  EXPECT_DOUBLE_EQ(roc_auc({0.1, 0.4, 0.35, 0.8}, {false, false, true, true}), 0.75);
  EXPECT_DOUBLE_EQ(roc_auc({1, 1, 1, 1}, {false, true, false, true}), 0.5);
  EXPECT_THROW(roc_auc({1, 2}, {true, true}), ValidationError);
}

TEST(Auc, MatchesPairEnumerationProperty) {
  std::mt19937_64 rng(37);
  for (int inst = 0; inst < 200; ++inst) {
    const int n = 2 + static_cast<int>(rng() % 19);
    std::vector<double> s(n);
    std::vector<bool> l(n);
    for (int i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 6) / 5.0;
      l[i] = rng() % 2;
    }
    l[0] = true;
    l[1] = false;
    EXPECT_EQ(roc_auc(s, l), oracle::mann_whitney_auc(s, l));
  }
}

TEST(Auc, MultilabelExcludesSingleClassLabels) {
  const std::vector<LabelSetPrediction> s = {{{"a"}, {"a"}}, {{}, {"b"}}, {{"a"}, {}}};
  const auto r = indicator_auc(s, {"a", "b", "c"}, Average::kMacro);
  EXPECT_EQ(r.excluded_labels, (std::vector<std::string>{"b", "c"}));
  // label a: scores (1,0,0) labels (1,0,1) -> pairs (1>0)=1, (0=0)=0.5 -> 0.75
  EXPECT_DOUBLE_EQ(r.value, 0.75);
  EXPECT_EQ(r.warnings.size(), 2u);
}

TEST(Bleu, HandComputed) {
  // Unigram precision 5/6 with a length-6 hypothesis against a length-6 reference.
  EXPECT_NEAR(bleu("the cat sat on the mat", {"the cat is on the mat"}, 1), 5.0 / 6, 1e-12);
  // Clipping: "the the the" vs "the cat": 1/3, brevity: c=3 >= r=2.
  EXPECT_NEAR(bleu("the the the", {"the cat"}, 1), 1.0 / 3, 1e-12);
  // Brevity penalty exp(1 - 4/2) on a perfect prefix.
  EXPECT_NEAR(bleu("a b", {"a b c d"}, 1), std::exp(-1.0), 1e-12);
  EXPECT_EQ(bleu("", {"x"}, 2), 0.0);
  EXPECT_THROW(bleu("x", {}, 2), ValidationError);
  EXPECT_THROW(bleu("x", {"x"}, 5), ConfigError);
}

TEST(Bleu, MatchesBruteForceOracleProperty) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const std::string h = testing::random_sentence(rng, 1, 15);
    const std::vector<std::string> refs = {testing::random_sentence(rng, 1, 15),
                                           testing::random_sentence(rng, 1, 15)};
    for (int n = 1; n <= 4; ++n) {
      EXPECT_NEAR(bleu(h, refs, n), oracle::bleu(h, refs, n), 1e-9) << h;
    }
  }
}

TEST(Rouge, MatchesOracleProperty) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const std::string h = testing::random_sentence(rng, 1, 15);
    const std::string r = testing::random_sentence(rng, 1, 15);
    EXPECT_NEAR(rouge_n_f1(h, r, 1), oracle::rouge_n_f1(h, r, 1), 1e-9);
    EXPECT_NEAR(rouge_n_f1(h, r, 2), oracle::rouge_n_f1(h, r, 2), 1e-9);
    EXPECT_NEAR(rouge_l_f1(h, r), oracle::rouge_l_f1(h, r), 1e-9);
  }
}

TEST(Rouge, HandComputed) {
  // bigrams hyp: the-cat, cat-sat; ref: the-cat, cat-ran -> 1/2, 1/2
  EXPECT_NEAR(rouge_n_f1("the cat sat", "the cat ran", 2), 0.5, 1e-12);
  // LCS(a b c d, a c d) = 3 -> P=3/4, R=1
  EXPECT_NEAR(rouge_l_f1("a b c d", "a c d"), 2 * 0.75 / 1.75, 1e-12);
}

TEST(Meteor, ExactAndFragmented) {
  // Identical 4-token sentence: 1 chunk, penalty 0.5*(1/4)^3.
  EXPECT_NEAR(meteor_lite("a b c d", "a b c d"), 1 - 0.5 / 64, 1e-12);
  EXPECT_EQ(meteor_lite("x y", "a b"), 0.0);
  // Reversed order: 4 chunks, penalty 0.5.
  EXPECT_NEAR(meteor_lite("d c b a", "a b c d"), 0.5, 1e-12);
}

TEST(Hits, CanonicalizedTopK) {
  EXPECT_EQ(hits_at_k({"Meat", "eat"}, {"meat"}, 1), 1);
  EXPECT_EQ(hits_at_k({"fish", "eat"}, {"meat", "eat"}, 1), 0);
  EXPECT_EQ(hits_at_k({"fish", "eat"}, {"meat", "eat"}, 3), 1);
  EXPECT_EQ(hits_at_k({}, {"x"}, 3), 0);
}

TEST(SlRatio, BoundariesAndExample) {
  const Money listed = Money::from_cents(1000), buyer = Money::from_cents(500);
  EXPECT_EQ(sl_ratio(listed, buyer, listed), 0.0);
  EXPECT_EQ(sl_ratio(listed, buyer, buyer), 1.0);
  EXPECT_DOUBLE_EQ(sl_ratio(listed, buyer, Money::from_cents(800)), 0.4);
  EXPECT_THROW(sl_ratio(listed, listed, buyer), ValidationError);
}

TEST(Cosine, Basics) {
  EXPECT_DOUBLE_EQ(cosine({1, 0}, {0, 1}), 0.0);
  EXPECT_NEAR(cosine({1, 2}, {2, 4}), 1.0, 1e-12);
  EXPECT_THROW(cosine({0, 0}, {1, 0}), ValidationError);
  EXPECT_THROW(cosine({1}, {1, 0}), ValidationError);
}

TEST(BertScore, GreedyMatching) {
  // 2 reference tokens x 3 hypothesis tokens.
  const std::vector<std::vector<double>> sim = {{0.9, 0.1, 0.2}, {0.3, 0.5, 0.4}};
  const Prf r = bertscore_from_similarity(sim);
  EXPECT_NEAR(r.recall, 100 * (0.9 + 0.5) / 2, 1e-12);
  EXPECT_NEAR(r.precision, 100 * (0.9 + 0.5 + 0.4) / 3, 1e-12);
  HashingEmbedding e;
  const Prf same = bertscore("the cat sat", "the cat sat", e);
  EXPECT_NEAR(same.f1, 100.0, 1e-9);
}

}  // namespace
}  // namespace proeval
