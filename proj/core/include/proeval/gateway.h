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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proeval/prompt.h"
#include "proeval/types.h"

namespace proeval {

struct ProviderConfig {
  // "chat" (HTTPS chat-completion endpoint) or "scripted".
  std::string kind = "chat";
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  std::string model_id;
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int max_new_tokens = 128;
  std::chrono::milliseconds request_timeout{60000};
  int max_retries = 3;
  // First retry waits this long; each further retry doubles it.
  std::chrono::milliseconds retry_base_delay{500};
  // Scripted providers only: path of the script file.
  std::string script_path;

  // Throws ConfigError when an invariant is broken.
  void validate() const;
  // The key value, or AuthError when the variable is unset or empty.
  std::string resolve_api_key() const;
};

// 128 for clarification and target-guided, 256 for negotiation.
int default_max_new_tokens(TaskKind task);

ProviderConfig provider_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProviderConfig& cfg);

struct CompletionRecord {
  std::string prompt_digest;
  // Exactly as returned by the provider.
  std::string raw_text;
  std::int64_t latency_ms = 0;
  bool cached = false;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// One POST per call. Implementations throw TransportError on connection-level
// failures.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post_json(const std::string& url,
                                 const std::map<std::string, std::string>& headers,
                                 const std::string& body,
                                 std::chrono::milliseconds timeout) = 0;
};

// HTTPS client backed by cpp-httplib.
std::shared_ptr<Transport> make_http_transport();

// Produces the text of one completion; no caching.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::string generate(const ProviderConfig& cfg, const std::string& prompt,
                               const std::string& digest) = 0;
};

// Chat-completion REST shape: {"model", "messages", "temperature", "max_tokens"}.
// 401/403 raise AuthError; 429, 5xx and transient transport failures are
// retried with exponential backoff, then raise TimeoutError; other error
// payloads raise ProviderError carrying the provider's message verbatim.
class ChatCompletionBackend : public CompletionBackend {
 public:
  explicit ChatCompletionBackend(std::shared_ptr<Transport> transport);
  std::string generate(const ProviderConfig& cfg, const std::string& prompt,
                       const std::string& digest) override;

 private:
  std::shared_ptr<Transport> transport_;
};

// Error text of a provider error payload, or the body itself.
std::string provider_error_message(const std::string& body);

struct ScriptEntry {
  // Glob over the whole prompt: '*' any run, '?' one byte.
  std::string pattern;
  std::string reply;
  // Unlimited when unset.
  std::optional<int> uses;
};

// Deterministic replies for tests and offline runs. The first entry whose
// pattern matches and whose uses are not exhausted answers.
class ScriptedProvider : public CompletionBackend {
 public:
  explicit ScriptedProvider(std::vector<ScriptEntry> script);
  // {"entries": [{"match": "*", "reply": "...", "uses": 1}]}
  static std::shared_ptr<ScriptedProvider> load(const std::filesystem::path& path);

  std::string generate(const ProviderConfig& cfg, const std::string& prompt,
                       const std::string& digest) override;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::vector<ScriptEntry> script_;
  std::vector<int> used_;
  std::size_t calls_ = 0;
};

// Replies computed by a function of the prompt.
class CallbackProvider : public CompletionBackend {
 public:
  using Fn = std::function<std::string(const std::string& prompt)>;
  explicit CallbackProvider(Fn fn) : fn_(std::move(fn)) {}
  std::string generate(const ProviderConfig&, const std::string& prompt,
                       const std::string&) override {
    return fn_(prompt);
  }

 private:
  Fn fn_;
};

bool glob_match(std::string_view pattern, std::string_view text);

// One file per digest: <dir>/<digest>.json holding
// {"prompt_digest", "model_id", "raw_text", "latency_ms"}.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path dir);
  std::optional<CompletionRecord> get(const std::string& digest) const;
  // Atomic: writes a temp file in the same directory, then renames.
  void put(const CompletionRecord& record, const std::string& model_id) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Cached, concurrency-bounded access to a backend. Safe to call from many
// threads.
class LlmGateway {
 public:
  static constexpr int kDefaultMaxInFlight = 4;

  LlmGateway(ProviderConfig cfg, std::shared_ptr<CompletionBackend> backend,
             std::optional<std::filesystem::path> cache_dir = std::nullopt,
             int max_in_flight = kDefaultMaxInFlight);

  CompletionRecord complete(const PromptBundle& prompt);
  CompletionRecord complete(const std::string& prompt_text);

  const ProviderConfig& config() const { return cfg_; }
  std::size_t backend_calls() const { return backend_calls_.load(); }

 private:
  ProviderConfig cfg_;
  std::shared_ptr<CompletionBackend> backend_;
  std::optional<CompletionCache> cache_;
  std::counting_semaphore<1024> slots_;
  std::atomic<std::size_t> backend_calls_{0};
};

// Builds the backend named by cfg.kind ("chat" over `transport`, or
// "scripted" from cfg.script_path).
std::shared_ptr<CompletionBackend> make_backend(const ProviderConfig& cfg,
                                                std::shared_ptr<Transport> transport);

}  // namespace proeval
