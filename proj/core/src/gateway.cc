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

#include "proeval/gateway.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "proeval/digest.h"
#include "proeval/errors.h"

namespace proeval {

void ProviderConfig::validate() const {
  if (kind != "chat" && kind != "scripted") {
    throw ConfigError("unknown provider kind '" + kind + "'");
  }
  if (model_id.empty()) throw ConfigError("provider model_id is empty");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (max_new_tokens <= 0) throw ConfigError("max_new_tokens must be > 0");
  if (request_timeout.count() <= 0) throw ConfigError("request_timeout must be > 0");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (kind == "chat" && endpoint_url.empty()) throw ConfigError("endpoint_url is empty");
}

std::string ProviderConfig::resolve_api_key() const {
  const char* v = api_key_env.empty() ? nullptr : std::getenv(api_key_env.c_str());
  if (v == nullptr || *v == '\0') {
    throw AuthError("API key environment variable '" + api_key_env + "' is not set");
  }
  return v;
}

int default_max_new_tokens(TaskKind task) {
  return task == TaskKind::kNegotiation ? 256 : 128;
}

ProviderConfig provider_config_from_json(const nlohmann::json& j) {
  ProviderConfig c;
  c.kind = j.value("kind", c.kind);
  c.endpoint_url = j.value("endpoint_url", c.endpoint_url);
  c.model_id = j.value("model_id", c.model_id);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.temperature = j.value("temperature", c.temperature);
  c.max_new_tokens = j.value("max_new_tokens", c.max_new_tokens);
  if (j.contains("request_timeout_s")) {
    c.request_timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(j.at("request_timeout_s").get<double>() * 1000));
  }
  c.max_retries = j.value("max_retries", c.max_retries);
  if (j.contains("retry_base_delay_ms")) {
    c.retry_base_delay = std::chrono::milliseconds(j.at("retry_base_delay_ms").get<int>());
  }
  c.script_path = j.value("script_path", c.script_path);
  return c;
}

nlohmann::json to_json(const ProviderConfig& c) {
  nlohmann::json j{{"kind", c.kind},
                   {"model_id", c.model_id},
                   {"temperature", c.temperature},
                   {"max_new_tokens", c.max_new_tokens},
                   {"request_timeout_s", c.request_timeout.count() / 1000.0},
                   {"max_retries", c.max_retries},
                   {"retry_base_delay_ms", c.retry_base_delay.count()}};
  if (c.kind == "chat") {
    j["endpoint_url"] = c.endpoint_url;
    j["api_key_env"] = c.api_key_env;
  } else {
    j["script_path"] = c.script_path;
  }
  return j;
}

std::string provider_error_message(const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_object() && j.contains("error")) {
    const auto& e = j["error"];
    if (e.is_object() && e.contains("message") && e["message"].is_string()) {
      return e["message"].get<std::string>();
    }
    if (e.is_string()) return e.get<std::string>();
  }
  return body;
}

ChatCompletionBackend::ChatCompletionBackend(std::shared_ptr<Transport> transport)
    : transport_(std::move(transport)) {}

std::string ChatCompletionBackend::generate(const ProviderConfig& cfg,
                                            const std::string& prompt,
                                            const std::string& digest) {
  const std::string key = cfg.resolve_api_key();
  const nlohmann::json req{{"model", cfg.model_id},
                           {"messages", {{{"role", "user"}, {"content", prompt}}}},
                           {"temperature", cfg.temperature},
                           {"max_tokens", cfg.max_new_tokens}};
  const std::string body = req.dump();
  const std::map<std::string, std::string> headers{
      {"Authorization", "Bearer " + key}, {"Content-Type", "application/json"}};

  std::string last_error;
  auto delay = cfg.retry_base_delay;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    HttpResponse resp;
    try {
      resp = transport_->post_json(cfg.endpoint_url, headers, body, cfg.request_timeout);
    } catch (const TransportError& e) {
      if (!e.transient()) throw;
      last_error = e.what();
      continue;
    }
    if (resp.status == 401 || resp.status == 403) {
      throw AuthError("provider rejected credentials (HTTP " + std::to_string(resp.status) +
                      "): " + provider_error_message(resp.body));
    }
    if (resp.status == 429 || resp.status >= 500) {
      last_error = "HTTP " + std::to_string(resp.status) + ": " +
                   provider_error_message(resp.body);
      continue;
    }
    if (resp.status != 200) throw ProviderError(provider_error_message(resp.body));

    auto j = nlohmann::json::parse(resp.body, nullptr, false);
    if (j.is_discarded()) throw ProviderError("malformed provider response: " + resp.body);
    if (j.contains("error")) throw ProviderError(provider_error_message(resp.body));
    try {
      const auto& content = j.at("choices").at(0).at("message").at("content");
      return content.is_null() ? std::string() : content.get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw ProviderError("provider response has no choices[0].message.content: " +
                          resp.body);
    }
  }
  throw TimeoutError("request " + digest.substr(0, 12) + " failed after " +
                     std::to_string(cfg.max_retries + 1) + " attempts: " + last_error);
}

bool glob_match(std::string_view p, std::string_view t) {
  std::size_t pi = 0, ti = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (ti < t.size()) {
    if (pi < p.size() && (p[pi] == '?' || p[pi] == t[ti])) {
      ++pi;
      ++ti;
    } else if (pi < p.size() && p[pi] == '*') {
      star = pi++;
      mark = ti;
    } else if (star != std::string_view::npos) {
      pi = star + 1;
      ti = ++mark;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '*') ++pi;
  return pi == p.size();
}

ScriptedProvider::ScriptedProvider(std::vector<ScriptEntry> script)
    : script_(std::move(script)), used_(script_.size(), 0) {
  if (script_.empty()) throw ConfigError("scripted provider needs at least one entry");
}

std::shared_ptr<ScriptedProvider> ScriptedProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script " + path.string());
  std::vector<ScriptEntry> entries;
  try {
    nlohmann::json j;
    in >> j;
    for (const auto& e : j.at("entries")) {
      ScriptEntry s;
      s.pattern = e.value("match", std::string("*"));
      s.reply = e.at("reply").get<std::string>();
      if (e.contains("uses")) s.uses = e.at("uses").get<int>();
      entries.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed script " + path.string() + ": " + e.what());
  }
  return std::make_shared<ScriptedProvider>(std::move(entries));
}

std::string ScriptedProvider::generate(const ProviderConfig&, const std::string& prompt,
                                       const std::string& digest) {
  std::lock_guard lock(mu_);
  ++calls_;
  for (std::size_t i = 0; i < script_.size(); ++i) {
    const ScriptEntry& e = script_[i];
    if (e.uses && used_[i] >= *e.uses) continue;
    if (!glob_match(e.pattern, prompt)) continue;
    ++used_[i];
    return e.reply;
  }
  throw ScriptError("no script entry matches prompt " + digest);
}

std::size_t ScriptedProvider::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

CompletionCache::CompletionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<CompletionRecord> CompletionCache::get(const std::string& digest) const {
  std::ifstream in(dir_ / (digest + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || j.value("prompt_digest", std::string()) != digest) {
    return std::nullopt;
  }
  CompletionRecord r;
  r.prompt_digest = digest;
  r.raw_text = j.value("raw_text", std::string());
  r.latency_ms = j.value("latency_ms", std::int64_t{0});
  r.cached = true;
  return r;
}

void CompletionCache::put(const CompletionRecord& r, const std::string& model_id) const {
  const nlohmann::json j{{"prompt_digest", r.prompt_digest},
                         {"model_id", model_id},
                         {"raw_text", r.raw_text},
                         {"latency_ms", r.latency_ms}};
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  const auto final_path = dir_ / (r.prompt_digest + ".json");
  const auto tmp = dir_ / (r.prompt_digest + ".json.tmp." + tid.str());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw Error("cache write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

LlmGateway::LlmGateway(ProviderConfig cfg, std::shared_ptr<CompletionBackend> backend,
                       std::optional<std::filesystem::path> cache_dir, int max_in_flight)
    : cfg_(std::move(cfg)), backend_(std::move(backend)), slots_(max_in_flight) {
  cfg_.validate();
  if (!backend_) throw ConfigError("gateway needs a backend");
  if (max_in_flight < 1 || max_in_flight > 1024) {
    throw ConfigError("max_in_flight must be in [1, 1024]");
  }
  if (cache_dir) cache_.emplace(*cache_dir);
}

CompletionRecord LlmGateway::complete(const PromptBundle& prompt) {
  return complete(prompt.text);
}

CompletionRecord LlmGateway::complete(const std::string& prompt_text) {
  const std::string digest =
      prompt_digest(cfg_.model_id, prompt_text, cfg_.temperature, cfg_.max_new_tokens);
  if (cache_) {
    if (auto hit = cache_->get(digest)) return *hit;
  }
  CompletionRecord r;
  r.prompt_digest = digest;
  {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<1024>& s;
      ~Release() { s.release(); }
    } release{slots_};
    const auto start = std::chrono::steady_clock::now();
    ++backend_calls_;
    r.raw_text = backend_->generate(cfg_, prompt_text, digest);
    r.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  }
  if (cache_) cache_->put(r, cfg_.model_id);
  return r;
}

std::shared_ptr<CompletionBackend> make_backend(const ProviderConfig& cfg,
                                                std::shared_ptr<Transport> transport) {
  if (cfg.kind == "scripted") {
    if (cfg.script_path.empty()) throw ConfigError("scripted provider needs script_path");
    return ScriptedProvider::load(cfg.script_path);
  }
  if (cfg.kind == "chat") {
    if (!transport) transport = make_http_transport();
    return std::make_shared<ChatCompletionBackend>(std::move(transport));
  }
  throw ConfigError("unknown provider kind '" + cfg.kind + "'");
}

}  // namespace proeval
