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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proeval/embedding.h"
#include "proeval/types.h"

namespace proeval {

// Precision, recall and F1. Classification metrics report percentages;
// bertscore reports values scaled by 100.
struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct BinaryPrediction {
  std::string id;
  bool gold = false;
  bool predicted = false;
};

// Positive class = true. 0/0 ratios are 0. Throws ValidationError on empty
// input or duplicate ids.
Prf precision_recall_f1(const std::vector<BinaryPrediction>& pairs);
Prf precision_recall_f1(const std::vector<bool>& gold, const std::vector<bool>& predicted);

// 2PR/(P+R), 0 when P+R = 0.
double f1_from_precision_recall(double precision, double recall);

enum class Average { kMacro, kMicro, kWeighted };
std::string_view to_token(Average avg);
Average parse_average(std::string_view token);

struct LabelSetPrediction {
  std::vector<std::string> gold;
  std::vector<std::string> predicted;
};

// Percentage. Labels outside `vocabulary` throw ValidationError. Macro counts
// zero-support labels as 0; weighted skips them.
double multilabel_f1(const std::vector<LabelSetPrediction>& samples,
                     const std::vector<std::string>& vocabulary, Average mode);

// Mann-Whitney AUC with half credit for ties. Throws ValidationError unless
// both classes are present.
double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct AucResult {
  double value = 0;
  std::vector<std::string> excluded_labels;
  std::vector<std::string> warnings;
};

// scores[i][k] and labels[i][k] for sample i and label k. Labels with a
// single class are excluded (macro/weighted) with a warning; weighted uses
// positive counts as weights; micro pools every (score, label) pair.
AucResult roc_auc_multilabel(const std::vector<std::vector<double>>& scores,
                             const std::vector<std::vector<bool>>& labels,
                             const std::vector<std::string>& label_names, Average mode);

// AUC over 0/1 membership scores of predicted label sets.
AucResult indicator_auc(const std::vector<LabelSetPrediction>& samples,
                        const std::vector<std::string>& vocabulary, Average mode);

// Sentence BLEU in [0, 1]; see text::tokenize for tokenisation.
double bleu(std::string_view hyp, const std::vector<std::string>& refs, int max_n);
// Arithmetic mean of sentence scores.
double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::vector<std::string>>& refs, int max_n);

double rouge_n_f1(std::string_view hyp, std::string_view ref, int n);
double rouge_l_f1(std::string_view hyp, std::string_view ref);
// Exact-match METEOR without stemming or synonyms.
double meteor_lite(std::string_view hyp, std::string_view ref);

// 1 when one of the first k predictions equals a gold topic after
// text::canonicalize.
int hits_at_k(const std::vector<std::string>& predicted, const std::vector<std::string>& gold,
              int k);

// (listed - bargain) / (listed - buyer_target). Throws ValidationError when
// listed == buyer_target.
double sl_ratio(Money listed, Money buyer_target, Money bargain);

// Throws ValidationError for a zero-norm vector or a dimension mismatch.
double cosine(const Vector& a, const Vector& b);

// Cosine of the two sentence embeddings. Both texts must be non-empty.
double coherence(std::string_view prev_utterance, std::string_view response,
                 EmbeddingProvider& provider);

// sim[i][j] = similarity of reference token i and hypothesis token j.
Prf bertscore_from_similarity(const std::vector<std::vector<double>>& sim);
Prf bertscore(std::string_view hyp, std::string_view ref, TokenEmbeddingProvider& provider);

// All n-grams of a token sequence with their counts.
std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& tokens,
                                                     int n);

}  // namespace proeval
