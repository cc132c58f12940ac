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
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "proeval/gateway.h"

namespace proeval {

using Vector = std::vector<double>;

// Sentence-level embeddings. The same text yields the same vector for the
// lifetime of the provider, and every vector has dimension() entries.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual Vector embed(std::string_view text) = 0;
  virtual std::string model_id() const = 0;
};

// One vector per token of text::tokenize(text), for BERTScore.
class TokenEmbeddingProvider {
 public:
  virtual ~TokenEmbeddingProvider() = default;
  virtual std::vector<Vector> embed_tokens(std::string_view text) = 0;
  virtual std::string model_id() const = 0;
};

// Offline default: signed feature hashing of tokens and character trigrams
// into a fixed number of buckets, L2-normalised. Only lexical similarity is
// captured; use an HTTP provider for semantic scores.
class HashingEmbedding : public EmbeddingProvider, public TokenEmbeddingProvider {
 public:
  explicit HashingEmbedding(std::size_t dim = 256);

  Vector embed(std::string_view text) override;
  std::vector<Vector> embed_tokens(std::string_view text) override;
  std::string model_id() const override;
  std::size_t dimension() const { return dim_; }

 private:
  void add_token(Vector& v, std::string_view token) const;
  std::size_t dim_;
};

// POSTs {"model", "input"} to an embeddings endpoint and reads
// data[0].embedding. Results are memoised per text.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(ProviderConfig cfg, std::shared_ptr<Transport> transport);
  Vector embed(std::string_view text) override;
  std::string model_id() const override { return cfg_.model_id; }

 private:
  ProviderConfig cfg_;
  std::shared_ptr<Transport> transport_;
  std::mutex mu_;
  std::map<std::string, Vector, std::less<>> memo_;
};

std::uint64_t fnv1a64(std::string_view s);

}  // namespace proeval
