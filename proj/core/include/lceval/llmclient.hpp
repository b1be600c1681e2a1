// Provider-agnostic chat-completion client with an on-disk reply cache.
//
// Every completion is keyed by a content hash of (model id, request
// parameters, prompt); a warm cache makes evaluation re-runs free and
// byte-reproducible. The HTTP transport is injectable so tests drive the
// retry and concurrency behaviour with fakes.

#ifndef LCEVAL_LLMCLIENT_HPP
#define LCEVAL_LLMCLIENT_HPP

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lceval::llm {

struct RequestParams {
  std::optional<double> temperature;  // provider default when unset
  std::optional<int> max_tokens;

  bool operator==(const RequestParams&) const = default;
};

struct ModelRecord {
  std::string model_id;
  std::string display_name;
  double mmlu_score = 0.0;  // percent, in [0, 100]
  std::string provider;     // "openai" or "gemini" response shapes
  std::string endpoint;     // empty for historical models
  std::string auth_env_var;
  RequestParams params;
  int max_in_flight = 4;
};

std::vector<ModelRecord> load_registry(const std::filesystem::path& file);

/// Stable across serialization round trips of the ModelRecord: only
/// model_id, params and the prompt feed the hash.
std::string cache_key(const ModelRecord& model, std::string_view prompt);

struct CompletionCacheEntry {
  std::string key;
  std::string raw_reply;
  std::string timestamp;
  std::string provider_metadata;
};

/// One JSON file per entry under the cache directory, named by key.
/// Concurrent writers of the same key are harmless: values for a key are
/// identical by construction and writes are atomic (tmp + rename).
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path dir);

  std::optional<CompletionCacheEntry> find(const std::string& key) const;
  void store(const CompletionCacheEntry& entry);
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Throws Error(Timeout) / Error(NetworkError) for transport failures and
/// returns the HTTP response otherwise, whatever the status.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(
      const std::string& url,
      const std::vector<std::pair<std::string, std::string>>& headers,
      const std::string& body) = 0;
};

std::unique_ptr<Transport> make_http_transport(int timeout_seconds = 120);

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{250};  // doubled per attempt
  std::function<void(std::chrono::milliseconds)> sleeper;  // injectable
};

class Client {
 public:
  Client(std::shared_ptr<CompletionCache> cache,
         std::shared_ptr<Transport> transport, RetryPolicy retry = {},
         bool offline = false);

  /// Cache first; then one network call with retry/backoff on transient
  /// failures. Throws Error(AuthMissing) before any network activity when
  /// the credential variable is unset, Error(OfflineCacheMiss) in offline
  /// mode, Error(RateLimited)/Error(Timeout)/Error(ProviderError) after
  /// retries are exhausted.
  std::string complete(const ModelRecord& model, const std::string& prompt);

  struct Outcome {
    std::optional<std::string> reply;
    std::string error;  // empty on success
  };

  /// Replies positionally aligned with prompts; per-item errors are
  /// collected, not fail-fast. In-flight requests are bounded by
  /// model.max_in_flight.
  std::vector<Outcome> complete_batch(const ModelRecord& model,
                                      const std::vector<std::string>& prompts);

  int attempts_made() const { return attempts_; }

 private:
  std::string perform_request(const ModelRecord& model,
                              const std::string& prompt);

  std::shared_ptr<CompletionCache> cache_;
  std::shared_ptr<Transport> transport_;
  RetryPolicy retry_;
  bool offline_;
  std::atomic<int> attempts_{0};
};

}  // namespace lceval::llm

#endif  // LCEVAL_LLMCLIENT_HPP
