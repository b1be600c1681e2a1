#include "lceval/llmclient.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "lceval/errors.hpp"
#include "lceval/sha256.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace lceval::llm {

using nlohmann::json;

std::vector<ModelRecord> load_registry(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot read registry " + file.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError,
                "registry " + file.string() + ": " + e.what());
  }
  std::vector<ModelRecord> models;
  for (const json& m : doc.at("models")) {
    ModelRecord rec;
    rec.model_id = m.at("model_id").get<std::string>();
    rec.display_name = m.value("display_name", rec.model_id);
    rec.mmlu_score = m.value("mmlu", 0.0);
    rec.provider = m.value("provider", "openai");
    rec.endpoint = m.value("endpoint", "");
    rec.auth_env_var = m.value("auth_env_var", "");
    if (m.contains("temperature"))
      rec.params.temperature = m.at("temperature").get<double>();
    if (m.contains("max_tokens"))
      rec.params.max_tokens = m.at("max_tokens").get<int>();
    rec.max_in_flight = m.value("max_in_flight", 4);
    if (rec.mmlu_score < 0.0 || rec.mmlu_score > 100.0)
      throw Error(ErrorKind::ConfigError,
                  rec.model_id + ": mmlu must be in [0, 100]");
    models.push_back(std::move(rec));
  }
  return models;
}

std::string cache_key(const ModelRecord& model, std::string_view prompt) {
  std::string material;
  material += model.model_id;
  material += '\x1f';
  if (model.params.temperature) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *model.params.temperature);
    material += buf;
  } else {
    material += "default";
  }
  material += '\x1f';
  material += model.params.max_tokens ? std::to_string(*model.params.max_tokens)
                                      : "default";
  material += '\x1f';
  material += prompt;
  return sha256_hex(material);
}

CompletionCache::CompletionCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<CompletionCacheEntry> CompletionCache::find(
    const std::string& key) const {
  std::lock_guard lock(mu_);
  std::filesystem::path file = dir_ / (key + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception&) {
    return std::nullopt;  // truncated write from a dead process: treat as miss
  }
  CompletionCacheEntry entry;
  entry.key = doc.value("key", key);
  entry.raw_reply = doc.at("raw_reply").get<std::string>();
  entry.timestamp = doc.value("timestamp", "");
  entry.provider_metadata = doc.value("provider_metadata", "");
  return entry;
}

void CompletionCache::store(const CompletionCacheEntry& entry) {
  std::lock_guard lock(mu_);
  std::filesystem::path file = dir_ / (entry.key + ".json");
  if (std::filesystem::exists(file)) return;  // values per key are identical
  json doc = {{"key", entry.key},
              {"raw_reply", entry.raw_reply},
              {"timestamp", entry.timestamp},
              {"provider_metadata", entry.provider_metadata}};
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

namespace {

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

class HttplibTransport : public Transport {
 public:
  explicit HttplibTransport(int timeout_seconds) : timeout_(timeout_seconds) {}

  HttpResponse post(
      const std::string& url,
      const std::vector<std::pair<std::string, std::string>>& headers,
      const std::string& body) override {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
      throw Error(ErrorKind::NetworkError, "malformed endpoint url: " + url);
    std::size_t path_at = url.find('/', scheme + 3);
    std::string base = path_at == std::string::npos ? url : url.substr(0, path_at);
    std::string path = path_at == std::string::npos ? "/" : url.substr(path_at);

    httplib::Client cli(base);
    cli.set_connection_timeout(timeout_, 0);
    cli.set_read_timeout(timeout_, 0);
    httplib::Headers hs;
    for (const auto& [k, v] : headers) hs.emplace(k, v);
    auto res = cli.Post(path, hs, body, "application/json");
    if (!res) {
      if (res.error() == httplib::Error::ConnectionTimeout ||
          res.error() == httplib::Error::Read)
        throw Error(ErrorKind::Timeout, "request to " + base + " timed out");
      throw Error(ErrorKind::NetworkError,
                  "transport failure: " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }

 private:
  int timeout_;
};

json build_request(const ModelRecord& model, const std::string& prompt) {
  if (model.provider == "gemini") {
    json req = {{"contents", json::array({json{
                    {"parts", json::array({json{{"text", prompt}}})}}})}};
    json cfg = json::object();
    if (model.params.temperature) cfg["temperature"] = *model.params.temperature;
    if (model.params.max_tokens) cfg["maxOutputTokens"] = *model.params.max_tokens;
    if (!cfg.empty()) req["generationConfig"] = cfg;
    return req;
  }
  json req = {{"model", model.model_id},
              {"messages", json::array({json{{"role", "user"},
                                             {"content", prompt}}})}};
  if (model.params.temperature) req["temperature"] = *model.params.temperature;
  if (model.params.max_tokens) req["max_tokens"] = *model.params.max_tokens;
  return req;
}

std::string extract_reply(const ModelRecord& model, const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ProviderError,
                std::string("unparseable response body: ") + e.what());
  }
  try {
    if (model.provider == "gemini") {
      std::string text;
      for (const json& part : doc.at("candidates").at(0).at("content").at("parts"))
        text += part.at("text").get<std::string>();
      return text;
    }
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ProviderError,
                std::string("unexpected response shape: ") + e.what());
  }
}

bool retryable_status(int status) {
  return status == 429 || status >= 500;
}

}  // namespace

std::unique_ptr<Transport> make_http_transport(int timeout_seconds) {
  return std::make_unique<HttplibTransport>(timeout_seconds);
}

Client::Client(std::shared_ptr<CompletionCache> cache,
               std::shared_ptr<Transport> transport, RetryPolicy retry,
               bool offline)
    : cache_(std::move(cache)),
      transport_(std::move(transport)),
      retry_(retry),
      offline_(offline) {
  if (!retry_.sleeper)
    retry_.sleeper = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
}

std::string Client::perform_request(const ModelRecord& model,
                                    const std::string& prompt) {
  if (model.endpoint.empty())
    throw Error(ErrorKind::ProviderError,
                model.model_id + " has no endpoint configured");
  const char* key_value = nullptr;
  if (!model.auth_env_var.empty()) {
    key_value = std::getenv(model.auth_env_var.c_str());
    if (key_value == nullptr || *key_value == '\0')
      throw Error(ErrorKind::AuthMissing,
                  "environment variable " + model.auth_env_var + " is not set");
  }

  std::vector<std::pair<std::string, std::string>> headers;
  if (key_value != nullptr) {
    if (model.provider == "gemini")
      headers.emplace_back("x-goog-api-key", key_value);
    else
      headers.emplace_back("Authorization", std::string("Bearer ") + key_value);
  }
  const std::string body = build_request(model, prompt).dump();

  int last_status = 0;
  std::string last_body;
  Error last_error(ErrorKind::ProviderError, "no attempts made");
  for (int attempt = 0; attempt < retry_.max_attempts; ++attempt) {
    if (attempt > 0) retry_.sleeper(retry_.base_delay * (1 << (attempt - 1)));
    ++attempts_;
    try {
      HttpResponse res = transport_->post(model.endpoint, headers, body);
      last_status = res.status;
      last_body = res.body;
      if (res.status >= 200 && res.status < 300)
        return extract_reply(model, res.body);
      if (!retryable_status(res.status)) break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Timeout && e.kind() != ErrorKind::NetworkError)
        throw;
      last_error = e;
      last_status = -1;
    }
  }
  if (last_status == 429)
    throw Error(ErrorKind::RateLimited,
                model.model_id + " still rate-limited after " +
                    std::to_string(retry_.max_attempts) + " attempts");
  if (last_status == -1) throw last_error;
  throw Error(ErrorKind::ProviderError,
              model.model_id + ": status " + std::to_string(last_status) +
                  ", body: " + last_body.substr(0, 512));
}

std::string Client::complete(const ModelRecord& model,
                             const std::string& prompt) {
  if (prompt.empty())
    throw Error(ErrorKind::EmptyStimulus, "prompt is empty");
  const std::string key = cache_key(model, prompt);
  if (auto hit = cache_->find(key)) return hit->raw_reply;
  if (offline_)
    throw Error(ErrorKind::OfflineCacheMiss,
                "offline mode and no cached reply for " + model.model_id);

  std::string reply = perform_request(model, prompt);
  cache_->store({key, reply, now_utc(), model.provider});
  return reply;
}

std::vector<Client::Outcome> Client::complete_batch(
    const ModelRecord& model, const std::vector<std::string>& prompts) {
  std::vector<Outcome> outcomes(prompts.size());
  if (prompts.empty()) return outcomes;
  const int workers =
      std::max(1, std::min<int>(model.max_in_flight,
                                static_cast<int>(prompts.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= prompts.size()) return;
      try {
        outcomes[i].reply = complete(model, prompts[i]);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return outcomes;
}

}  // namespace lceval::llm
