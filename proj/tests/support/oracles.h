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

// Slow reference implementations used to check the metrics module. They
// share only the tokenizer with the code under test.

#include <string>
#include <string_view>
#include <vector>

namespace proeval::oracle {

using Tokens = std::vector<std::string>;

// Occurrences of tokens[start, start+n) in `in`, by scanning every offset.
int count_occurrences(const Tokens& tokens, std::size_t start, int n, const Tokens& in);

// Sentence BLEU with the same conventions as the library: clipped counts,
// add-one smoothing for orders >= 2 with no match, closest reference length.
double bleu(std::string_view hyp, const std::vector<std::string>& refs, int max_n);
double rouge_n_f1(std::string_view hyp, std::string_view ref, int n);
// LCS by memoised recursion.
double rouge_l_f1(std::string_view hyp, std::string_view ref);

// Fraction of (positive, negative) pairs ranked correctly, ties count half.
double mann_whitney_auc(const std::vector<double>& scores, const std::vector<bool>& labels);

// F1 (percentage) from pooled true/false positive counts.
double pooled_f1(const std::vector<bool>& gold, const std::vector<bool>& predicted);

}  // namespace proeval::oracle
