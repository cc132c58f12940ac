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

#include "proeval/embedding.h"

#include <cmath>
#include <thread>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {
namespace {

void normalize(Vector& v) {
  double n = 0;
  for (double x : v) n += x * x;
  if (n == 0) return;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

HashingEmbedding::HashingEmbedding(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw ConfigError("embedding dimension must be > 0");
}

void HashingEmbedding::add_token(Vector& v, std::string_view token) const {
  auto bump = [&](std::string_view feature, double weight) {
    const std::uint64_t h = fnv1a64(feature);
    v[h % dim_] += (h >> 63) ? -weight : weight;
  };
  bump(token, 1.0);
  const std::string padded = "<" + std::string(token) + ">";
  if (padded.size() > 3) {
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      bump(std::string_view(padded).substr(i, 3), 0.5);
    }
  }
}

Vector HashingEmbedding::embed(std::string_view text) {
  Vector v(dim_, 0.0);
  for (const auto& tok : text::tokenize(text)) add_token(v, tok);
  normalize(v);
  return v;
}

std::vector<Vector> HashingEmbedding::embed_tokens(std::string_view text) {
  std::vector<Vector> out;
  for (const auto& tok : text::tokenize(text)) {
    Vector v(dim_, 0.0);
    add_token(v, tok);
    normalize(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::string HashingEmbedding::model_id() const {
  return "hashing-fnv1a-trigram-" + std::to_string(dim_);
}

HttpEmbeddingProvider::HttpEmbeddingProvider(ProviderConfig cfg,
                                             std::shared_ptr<Transport> transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {
  if (!transport_) transport_ = make_http_transport();
  if (cfg_.model_id.empty()) throw ConfigError("embedding model_id is empty");
}

Vector HttpEmbeddingProvider::embed(std::string_view text) {
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(text);
    if (it != memo_.end()) return it->second;
  }
  const std::string key = cfg_.resolve_api_key();
  const nlohmann::json req{{"model", cfg_.model_id}, {"input", text}};
  const std::map<std::string, std::string> headers{{"Authorization", "Bearer " + key},
                                                   {"Content-Type", "application/json"}};
  std::string last_error;
  auto delay = cfg_.retry_base_delay;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    HttpResponse resp;
    try {
      resp = transport_->post_json(cfg_.endpoint_url, headers, req.dump(), cfg_.request_timeout);
    } catch (const TransportError& e) {
      if (!e.transient()) throw;
      last_error = e.what();
      continue;
    }
    if (resp.status == 401 || resp.status == 403) {
      throw AuthError("embedding provider rejected credentials: " +
                      provider_error_message(resp.body));
    }
    if (resp.status == 429 || resp.status >= 500) {
      last_error = "HTTP " + std::to_string(resp.status);
      continue;
    }
    if (resp.status != 200) throw ProviderError(provider_error_message(resp.body));
    auto j = nlohmann::json::parse(resp.body, nullptr, false);
    Vector v;
    try {
      v = j.at("data").at(0).at("embedding").get<Vector>();
    } catch (const nlohmann::json::exception&) {
      throw ProviderError("embedding response has no data[0].embedding: " + resp.body);
    }
    std::lock_guard lock(mu_);
    memo_.emplace(std::string(text), v);
    return v;
  }
  throw TimeoutError("embedding request failed after " + std::to_string(cfg_.max_retries + 1) +
                     " attempts: " + last_error);
}

}  // namespace proeval
