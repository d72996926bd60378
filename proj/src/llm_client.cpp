#include "sheetcomp/llm_client.hpp"

#include <thread>

#include "sheetcomp/error.hpp"

namespace sheetcomp {

std::string complete_with_retry(LlmClient& client, const LlmRequest& request, const RetryPolicy& policy) {
  int attempts = std::max(1, policy.attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      return client.complete(request);
    } catch (const TransportError&) {
      if (attempt >= attempts) throw;
      auto delay = policy.base_delay * (1 << (attempt - 1));
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
    }
  }
}

ScriptedClient::ScriptedClient(std::vector<std::string> responses, bool repeat_last)
    : responses_(std::move(responses)), repeat_last_(repeat_last) {}

void ScriptedClient::fail_next(int n) {
  std::lock_guard lock(mu_);
  failures_ = n;
}

std::string ScriptedClient::complete(const LlmRequest& request) {
  std::lock_guard lock(mu_);
  log_.push_back(request);
  if (failures_ > 0) {
    --failures_;
    throw TransportError("scripted transport failure");
  }
  if (next_ < responses_.size()) return responses_[next_++];
  if (repeat_last_ && !responses_.empty()) return responses_.back();
  throw PipelineError("scripted client ran out of responses after " + std::to_string(next_) + " calls");
}

std::vector<LlmRequest> ScriptedClient::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::size_t ScriptedClient::calls() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

}  // namespace sheetcomp
