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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {
namespace {

double ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }

double f1_counts(double tp, double fp, double fn) { return ratio(2 * tp, 2 * tp + fp + fn); }

Prf prf_counts(double tp, double fp, double fn) {
  Prf r;
  r.precision = 100.0 * ratio(tp, tp + fp);
  r.recall = 100.0 * ratio(tp, tp + fn);
  r.f1 = f1_from_precision_recall(r.precision, r.recall);
  return r;
}

std::map<std::string, std::size_t, std::less<>> index_of(const std::vector<std::string>& vocab) {
  if (vocab.empty()) throw ValidationError("empty label vocabulary");
  std::map<std::string, std::size_t, std::less<>> idx;
  for (std::size_t i = 0; i < vocab.size(); ++i) idx.emplace(vocab[i], i);
  return idx;
}

std::vector<bool> indicator(const std::vector<std::string>& labels,
                            const std::map<std::string, std::size_t, std::less<>>& idx) {
  std::vector<bool> v(idx.size(), false);
  for (const auto& l : labels) {
    auto it = idx.find(l);
    if (it == idx.end()) throw ValidationError("label '" + l + "' not in vocabulary");
    v[it->second] = true;
  }
  return v;
}

int overlap(const std::map<std::vector<std::string>, int>& a,
            const std::map<std::vector<std::string>, int>& b) {
  int n = 0;
  for (const auto& [g, c] : a) {
    auto it = b.find(g);
    if (it != b.end()) n += std::min(c, it->second);
  }
  return n;
}

double harmonic(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

}  // namespace

Prf precision_recall_f1(const std::vector<BinaryPrediction>& pairs) {
  if (pairs.empty()) throw ValidationError("precision_recall_f1 needs at least one pair");
  std::unordered_set<std::string> ids;
  double tp = 0, fp = 0, fn = 0;
  for (const auto& p : pairs) {
    if (!ids.insert(p.id).second) throw ValidationError("duplicate sample id '" + p.id + "'");
    if (p.gold && p.predicted) ++tp;
    if (!p.gold && p.predicted) ++fp;
    if (p.gold && !p.predicted) ++fn;
  }
  return prf_counts(tp, fp, fn);
}

Prf precision_recall_f1(const std::vector<bool>& gold, const std::vector<bool>& predicted) {
  if (gold.size() != predicted.size()) throw ValidationError("gold/prediction size mismatch");
  std::vector<BinaryPrediction> pairs;
  pairs.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    pairs.push_back({std::to_string(i), gold[i], predicted[i]});
  }
  return precision_recall_f1(pairs);
}

double f1_from_precision_recall(double precision, double recall) {
  return harmonic(precision, recall);
}

std::string_view to_token(Average avg) {
  switch (avg) {
    case Average::kMacro: return "macro";
    case Average::kMicro: return "micro";
    case Average::kWeighted: return "weighted";
  }
  return "macro";
}

Average parse_average(std::string_view token) {
  if (token == "macro") return Average::kMacro;
  if (token == "micro") return Average::kMicro;
  if (token == "weighted") return Average::kWeighted;
  throw ConfigError("unknown averaging mode '" + std::string(token) + "'");
}

double multilabel_f1(const std::vector<LabelSetPrediction>& samples,
                     const std::vector<std::string>& vocabulary, Average mode) {
  if (samples.empty()) throw ValidationError("multilabel_f1 needs at least one sample");
  const auto idx = index_of(vocabulary);
  const std::size_t k = vocabulary.size();
  std::vector<double> tp(k, 0), fp(k, 0), fn(k, 0);
  for (const auto& s : samples) {
    const auto g = indicator(s.gold, idx);
    const auto p = indicator(s.predicted, idx);
    for (std::size_t j = 0; j < k; ++j) {
      if (g[j] && p[j]) ++tp[j];
      if (!g[j] && p[j]) ++fp[j];
      if (g[j] && !p[j]) ++fn[j];
    }
  }
  if (mode == Average::kMicro) {
    const double TP = std::accumulate(tp.begin(), tp.end(), 0.0);
    const double FP = std::accumulate(fp.begin(), fp.end(), 0.0);
    const double FN = std::accumulate(fn.begin(), fn.end(), 0.0);
    return prf_counts(TP, FP, FN).f1;
  }
  double sum = 0, weight = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double support = tp[j] + fn[j];
    const double f1 = 100.0 * f1_counts(tp[j], fp[j], fn[j]);
    if (mode == Average::kMacro) {
      sum += support > 0 ? f1 : 0.0;
      weight += 1;
    } else if (support > 0) {
      sum += support * f1;
      weight += support;
    }
  }
  return ratio(sum, weight);
}

double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw ValidationError("scores/labels size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Average ranks over tie groups (1-based).
  double pos_rank_sum = 0;
  double n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]]) {
        pos_rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ValidationError("roc_auc needs both classes");
  const double u = pos_rank_sum - n_pos * (n_pos + 1) / 2.0;
  return u / (n_pos * n_neg);
}

AucResult roc_auc_multilabel(const std::vector<std::vector<double>>& scores,
                             const std::vector<std::vector<bool>>& labels,
                             const std::vector<std::string>& label_names, Average mode) {
  if (scores.empty() || scores.size() != labels.size()) {
    throw ValidationError("roc_auc_multilabel needs matching non-empty inputs");
  }
  const std::size_t k = label_names.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].size() != k || labels[i].size() != k) {
      throw ValidationError("row " + std::to_string(i) + " does not match the label count");
    }
  }
  AucResult r;
  if (mode == Average::kMicro) {
    std::vector<double> s;
    std::vector<bool> l;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      s.insert(s.end(), scores[i].begin(), scores[i].end());
      l.insert(l.end(), labels[i].begin(), labels[i].end());
    }
    r.value = roc_auc(s, l);
    return r;
  }
  double sum = 0, weight = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> s;
    std::vector<bool> l;
    double pos = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      s.push_back(scores[i][j]);
      l.push_back(labels[i][j]);
      pos += labels[i][j] ? 1 : 0;
    }
    if (pos == 0 || pos == static_cast<double>(s.size())) {
      r.excluded_labels.push_back(label_names[j]);
      r.warnings.push_back("label '" + label_names[j] + "' has a single class; excluded");
      continue;
    }
    const double w = mode == Average::kWeighted ? pos : 1.0;
    sum += w * roc_auc(s, l);
    weight += w;
  }
  if (weight == 0) throw ValidationError("roc_auc: every label has a single class");
  r.value = sum / weight;
  return r;
}

AucResult indicator_auc(const std::vector<LabelSetPrediction>& samples,
                        const std::vector<std::string>& vocabulary, Average mode) {
  const auto idx = index_of(vocabulary);
  std::vector<std::vector<double>> scores;
  std::vector<std::vector<bool>> labels;
  for (const auto& s : samples) {
    const auto p = indicator(s.predicted, idx);
    scores.emplace_back(p.begin(), p.end());
    labels.push_back(indicator(s.gold, idx));
  }
  return roc_auc_multilabel(scores, labels, vocabulary, mode);
}

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& tokens,
                                                     int n) {
  std::map<std::vector<std::string>, int> out;
  if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return out;
}

double bleu(std::string_view hyp, const std::vector<std::string>& refs, int max_n) {
  if (refs.empty()) throw ValidationError("bleu needs at least one reference");
  if (max_n < 1 || max_n > 4) throw ConfigError("bleu max_n must be in 1..4");
  const auto h = text::tokenize(hyp);
  std::vector<std::vector<std::string>> r;
  for (const auto& ref : refs) {
    r.push_back(text::tokenize(ref));
    if (r.back().empty()) throw ValidationError("bleu reference is empty");
  }
  if (h.empty()) return 0.0;

  double log_sum = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto hc = ngram_counts(h, n);
    std::map<std::vector<std::string>, int> max_ref;
    for (const auto& rt : r) {
      for (const auto& [g, c] : ngram_counts(rt, n)) max_ref[g] = std::max(max_ref[g], c);
    }
    const double matches = overlap(hc, max_ref);
    const double total = h.size() >= static_cast<std::size_t>(n)
                             ? static_cast<double>(h.size() - n + 1)
                             : 0.0;
    double p;
    if (n >= 2 && matches == 0) {
      p = (matches + 1) / (total + 1);
    } else {
      p = ratio(matches, total);
    }
    if (p == 0) return 0.0;
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(h.size());
  double best = static_cast<double>(r[0].size());
  for (const auto& rt : r) {
    const double len = static_cast<double>(rt.size());
    if (std::abs(len - c) < std::abs(best - c) || (std::abs(len - c) == std::abs(best - c) &&
                                                   len < best)) {
      best = len;
    }
  }
  const double bp = c >= best ? 1.0 : std::exp(1.0 - best / c);
  return bp * std::exp(log_sum / max_n);
}

double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::vector<std::string>>& refs, int max_n) {
  if (hyps.empty() || hyps.size() != refs.size()) {
    throw ValidationError("corpus_bleu needs matching non-empty inputs");
  }
  double sum = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) sum += bleu(hyps[i], refs[i], max_n);
  return sum / static_cast<double>(hyps.size());
}

double rouge_n_f1(std::string_view hyp, std::string_view ref, int n) {
  const auto hc = ngram_counts(text::tokenize(hyp), n);
  const auto rc = ngram_counts(text::tokenize(ref), n);
  double h_total = 0, r_total = 0;
  for (const auto& [g, c] : hc) h_total += c;
  for (const auto& [g, c] : rc) r_total += c;
  const double m = overlap(hc, rc);
  return harmonic(ratio(m, h_total), ratio(m, r_total));
}

double rouge_l_f1(std::string_view hyp, std::string_view ref) {
  const auto h = text::tokenize(hyp);
  const auto r = text::tokenize(ref);
  if (h.empty() || r.empty()) return 0.0;
  std::vector<std::size_t> prev(r.size() + 1, 0), cur(r.size() + 1, 0);
  for (std::size_t i = 1; i <= h.size(); ++i) {
    for (std::size_t j = 1; j <= r.size(); ++j) {
      cur[j] = h[i - 1] == r[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev[r.size()]);
  return harmonic(lcs / static_cast<double>(h.size()), lcs / static_cast<double>(r.size()));
}

double meteor_lite(std::string_view hyp, std::string_view ref) {
  const auto h = text::tokenize(hyp);
  const auto r = text::tokenize(ref);
  std::vector<bool> used(r.size(), false);
  // align[i] = matched reference position of hypothesis token i, or -1.
  std::vector<long> align(h.size(), -1);
  double matches = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!used[j] && h[i] == r[j]) {
        used[j] = true;
        align[i] = static_cast<long>(j);
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  double chunks = 0;
  long last = -2;
  bool in_chunk = false;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (align[i] < 0) {
      in_chunk = false;
      continue;
    }
    if (!in_chunk || align[i] != last + 1) ++chunks;
    in_chunk = true;
    last = align[i];
  }
  const double p = matches / static_cast<double>(h.size());
  const double rc = matches / static_cast<double>(r.size());
  const double fmean = 10 * p * rc / (rc + 9 * p);
  const double penalty = 0.5 * std::pow(chunks / matches, 3);
  return fmean * (1 - penalty);
}

int hits_at_k(const std::vector<std::string>& predicted, const std::vector<std::string>& gold,
              int k) {
  if (k < 1) throw ConfigError("hits@k needs k >= 1");
  std::set<std::string> g;
  for (const auto& t : gold) g.insert(text::canonicalize(t));
  const std::size_t limit = std::min(predicted.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < limit; ++i) {
    if (g.count(text::canonicalize(predicted[i]))) return 1;
  }
  return 0;
}

double sl_ratio(Money listed, Money buyer_target, Money bargain) {
  const std::int64_t den = listed.cents() - buyer_target.cents();
  if (den == 0) throw ValidationError("SL denominator zero: listed_price equals buyer_target");
  return static_cast<double>(listed.cents() - bargain.cents()) / static_cast<double>(den);
}

double cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ValidationError("embedding dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw ValidationError("zero-norm embedding");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double coherence(std::string_view prev_utterance, std::string_view response,
                 EmbeddingProvider& provider) {
  if (text::trim(prev_utterance).empty() || text::trim(response).empty()) {
    throw ValidationError("coherence needs two non-empty texts");
  }
  return cosine(provider.embed(prev_utterance), provider.embed(response));
}

Prf bertscore_from_similarity(const std::vector<std::vector<double>>& sim) {
  if (sim.empty() || sim[0].empty()) throw ValidationError("bertscore: empty token list");
  const std::size_t nr = sim.size(), nh = sim[0].size();
  double r = 0;
  for (const auto& row : sim) {
    if (row.size() != nh) throw ValidationError("bertscore: ragged similarity matrix");
    r += *std::max_element(row.begin(), row.end());
  }
  double p = 0;
  for (std::size_t j = 0; j < nh; ++j) {
    double best = sim[0][j];
    for (std::size_t i = 1; i < nr; ++i) best = std::max(best, sim[i][j]);
    p += best;
  }
  Prf out;
  out.recall = 100.0 * r / static_cast<double>(nr);
  out.precision = 100.0 * p / static_cast<double>(nh);
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

Prf bertscore(std::string_view hyp, std::string_view ref, TokenEmbeddingProvider& provider) {
  const auto h = provider.embed_tokens(hyp);
  const auto r = provider.embed_tokens(ref);
  if (h.empty() || r.empty()) throw ValidationError("bertscore: empty token list");
  std::vector<std::vector<double>> sim(r.size(), std::vector<double>(h.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < h.size(); ++j) sim[i][j] = cosine(r[i], h[j]);
  }
  return bertscore_from_similarity(sim);
}

}  // namespace proeval
