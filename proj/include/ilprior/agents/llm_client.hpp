#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>

#include "ilprior/tasks/task.hpp"

namespace ilprior {

/// Current UTC time as 2024-01-31T12:00:00Z.
std::string utc_timestamp();

struct RetryPolicy {
  int max_retries = 5;  // retries after the first attempt
  std::chrono::milliseconds initial_delay{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{30000};

  /// Delay before retry number `retry` (1-based), without jitter.
  std::chrono::milliseconds delay_for(int retry) const;
};

struct LlmAgentSpec {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4";
  double temperature = 1.0;
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  int parse_retries = 5;  // extra completions allowed per question for unparseable answers
  std::size_t max_concurrent = 8;
  std::string credential_env = "OPENAI_API_KEY";
  std::filesystem::path log_dir;  // empty: no request log

  /// Throws InvalidArgument on a negative temperature, negative retry
  /// counts or zero concurrency.
  void validate() const;
};

struct Completion {
  std::string text;
  int attempts = 1;  // HTTP requests made, including retries
};

/// One chat completion per call.
class CompletionService {
 public:
  virtual ~CompletionService() = default;
  virtual Completion complete(const MessageList& messages) const = 0;
  virtual std::size_t max_concurrency() const noexcept = 0;
};

/// Request body: {"model", "messages": [{"role", "content"}...], "temperature"}.
std::string build_request_body(const LlmAgentSpec& spec, const MessageList& messages);

/// First choice's message content from a chat-completions response. Throws
/// TransportError (status 0) if the document does not have that shape.
std::string extract_content(const std::string& response_body);

/// Chat-completions client over HTTP(S) with exponential backoff.
///
/// Transport failures, 429 and 5xx responses are retried up to
/// retry.max_retries times (a Retry-After header in seconds overrides the
/// computed delay, capped at max_delay). Other statuses fail immediately.
/// Concurrent callers beyond max_concurrent wait on an internal limiter.
class ChatClient final : public CompletionService {
 public:
  ChatClient(LlmAgentSpec spec, std::string api_key);

  /// Reads the credential from spec.credential_env. Throws Error naming the
  /// variable when it is unset or empty; no request is made.
  static std::shared_ptr<ChatClient> from_environment(const LlmAgentSpec& spec);

  Completion complete(const MessageList& messages) const override;
  std::size_t max_concurrency() const noexcept override { return spec_.max_concurrent; }
  const LlmAgentSpec& spec() const noexcept { return spec_; }

 private:
  void log_exchange(const std::string& request, int status, const std::string& response, int attempt) const;

  LlmAgentSpec spec_;
  std::string api_key_;
  std::string base_url_;  // scheme://host[:port]
  std::string path_;
  mutable std::counting_semaphore<4096> limiter_;
  mutable std::mutex log_mutex_;
};

}  // namespace ilprior
