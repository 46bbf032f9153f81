#include "ilprior/agents/llm_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ilprior/errors.hpp"

namespace ilprior {

using json = nlohmann::ordered_json;

std::string utc_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::chrono::milliseconds RetryPolicy::delay_for(int retry) const {
  double ms = static_cast<double>(initial_delay.count());
  for (int i = 1; i < retry; ++i) ms *= multiplier;
  ms = std::min(ms, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

void LlmAgentSpec::validate() const {
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (retry.max_retries < 0 || parse_retries < 0) throw InvalidArgument("retry counts must be >= 0");
  if (max_concurrent == 0 || max_concurrent > 4096) throw InvalidArgument("max_concurrent must be in [1, 4096]");
  if (retry.multiplier < 1.0) throw InvalidArgument("retry multiplier must be >= 1");
}

std::string build_request_body(const LlmAgentSpec& spec, const MessageList& messages) {
  json msgs = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  return json{{"model", spec.model}, {"messages", msgs}, {"temperature", spec.temperature}}.dump();
}

std::string extract_content(const std::string& response_body) {
  try {
    const json doc = json::parse(response_body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat-completions response: ") + e.what(), 0, 1);
  }
}

namespace {

void split_url(const std::string& url, std::string& base, std::string& path) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("endpoint must be an absolute http(s) URL: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw InvalidArgument("unsupported endpoint scheme: " + scheme);
  const auto path_start = url.find('/', scheme_end + 3);
  base = path_start == std::string::npos ? url : url.substr(0, path_start);
  path = path_start == std::string::npos ? "/" : url.substr(path_start);
}

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

ChatClient::ChatClient(LlmAgentSpec spec, std::string api_key)
    : spec_(std::move(spec)), api_key_(std::move(api_key)), limiter_(0) {
  spec_.validate();
  split_url(spec_.endpoint, base_url_, path_);
  limiter_.release(static_cast<std::ptrdiff_t>(spec_.max_concurrent));
  if (!spec_.log_dir.empty()) std::filesystem::create_directories(spec_.log_dir);
}

std::shared_ptr<ChatClient> ChatClient::from_environment(const LlmAgentSpec& spec) {
  const char* key = std::getenv(spec.credential_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error("environment variable " + spec.credential_env + " is not set; it must hold the API key");
  }
  return std::make_shared<ChatClient>(spec, key);
}

void ChatClient::log_exchange(const std::string& request, int status, const std::string& response,
                              int attempt) const {
  if (spec_.log_dir.empty()) return;
  json line{{"time", utc_timestamp()}, {"attempt", attempt}, {"status", status}};
  line["request"] = json::parse(request, nullptr, false);
  line["response"] = response;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(spec_.log_dir / "requests.jsonl", std::ios::app);
  out << line.dump() << '\n';
}

Completion ChatClient::complete(const MessageList& messages) const {
  limiter_.acquire();
  struct Release {
    std::counting_semaphore<4096>& s;
    ~Release() { s.release(); }
  } release{limiter_};

  const std::string body = build_request_body(spec_, messages);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(spec_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(spec_.timeout - secs);

  int attempt = 0;
  int last_status = 0;
  std::string last_error;
  while (true) {
    ++attempt;
    httplib::Client client(base_url_);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    std::chrono::milliseconds wait = spec_.retry.delay_for(attempt);
    const auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_status = 0;
      last_error = "transport error: " + httplib::to_string(res.error());
      log_exchange(body, 0, last_error, attempt);
    } else {
      last_status = res->status;
      log_exchange(body, res->status, res->body, attempt);
      if (res->status >= 200 && res->status < 300) {
        Completion c;
        try {
          c.text = extract_content(res->body);
        } catch (const TransportError& e) {
          throw TransportError(e.what(), res->status, attempt);
        }
        c.attempts = attempt;
        return c;
      }
      last_error = "HTTP " + std::to_string(res->status) + " from " + spec_.endpoint;
      if (!retryable(res->status)) throw TransportError(last_error + ": " + res->body.substr(0, 200), res->status, attempt);
      if (res->has_header("Retry-After")) {
        const std::string ra = res->get_header_value("Retry-After");
        char* end = nullptr;
        const double seconds = std::strtod(ra.c_str(), &end);
        if (end != ra.c_str() && seconds >= 0.0) {
          wait = std::min(spec_.retry.max_delay, std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0)));
        }
      }
    }
    if (attempt > spec_.retry.max_retries) {
      throw TransportError(last_error + " (gave up after " + std::to_string(attempt) + " attempts)", last_status,
                           attempt);
    }
    std::this_thread::sleep_for(wait);
  }
}

}  // namespace ilprior
