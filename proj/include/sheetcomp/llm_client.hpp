#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace sheetcomp {

struct LlmRequest {
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 300;
  double top_p = 0.95;
};

// Synchronous text-in/text-out model endpoint. complete() throws
// TransportError for failures worth retrying.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const LlmRequest& request) = 0;
};

struct RetryPolicy {
  int attempts = 3;
  // Delay before retry n is base_delay * 2^(n-1).
  std::chrono::milliseconds base_delay{500};
};

// Retries TransportError up to policy.attempts in total, then rethrows.
std::string complete_with_retry(LlmClient& client, const LlmRequest& request,
                                const RetryPolicy& policy = {});

// Replays canned responses in order and records every request. Safe to call
// from several threads; the response order then follows call order.
class ScriptedClient final : public LlmClient {
 public:
  explicit ScriptedClient(std::vector<std::string> responses, bool repeat_last = false);

  // The next `n` calls throw TransportError before any response is consumed.
  void fail_next(int n);

  std::string complete(const LlmRequest& request) override;

  std::vector<LlmRequest> requests() const;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> responses_;
  bool repeat_last_;
  std::size_t next_ = 0;
  int failures_ = 0;
  std::vector<LlmRequest> log_;
};

// Delegates to a callable; handy for tests whose answers depend on the prompt.
class FunctionClient final : public LlmClient {
 public:
  using Fn = std::function<std::string(const LlmRequest&)>;
  explicit FunctionClient(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const LlmRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

struct HttpClientOptions {
  // http(s)://host[:port]/path
  std::string endpoint;
  std::string model;
  std::string auth_token;
  std::chrono::seconds timeout{60};
};

// POSTs {"model", "prompt", "temperature", "max_tokens", "top_p"} as JSON and
// returns the "text" field of the JSON response. Connection failures, 429 and
// 5xx raise TransportError; other non-2xx statuses raise PipelineError.
std::unique_ptr<LlmClient> make_http_client(const HttpClientOptions& options);

}  // namespace sheetcomp
