#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lexcourt/gateway/call_log.hpp"
#include "lexcourt/gateway/clock.hpp"
#include "lexcourt/gateway/provider.hpp"
#include "lexcourt/gateway/rate_limiter.hpp"
#include "lexcourt/gateway/types.hpp"

namespace lexcourt::gateway {

struct GatewayOptions {
  std::string role = "default";
  std::string model_id = "mock-chat";
  std::string embedding_model_id = "mock-embed";
  double temperature = 0.7;
  int max_output_tokens = 2048;
  int max_retries = 2;
  int requests_per_minute = 600;
  double retry_backoff_seconds = 1.0;
};

inline constexpr const char* kReaskInstruction =
    "Output only the JSON object, with no text before or after it.";

// One handle per agent role. Thread-safe: rate limiting and logging are
// serialized internally.
class Gateway {
 public:
  Gateway(std::shared_ptr<Provider> provider, GatewayOptions options, std::shared_ptr<Clock> clock,
          std::shared_ptr<CallLog> log);

  // Request pre-filled with this gateway's model and sampling defaults.
  ChatRequest request(std::vector<Message> messages, std::string task,
                      ResponseFormat format = ResponseFormat::free_text) const;

  ChatReply chat(const ChatRequest& req);

  // Sends `req`, parses the reply with `parse`. A ParseFailure triggers a
  // re-ask (same prompt plus kReaskInstruction) up to max_retries times, then
  // FormatError(kind).
  template <class T>
  T chat_structured(const ChatRequest& req, const std::string& kind,
                    const std::function<T(const std::string&)>& parse);

  std::vector<Vector> embed(const EmbeddingRequest& req);
  std::vector<Vector> embed(std::vector<std::string> texts);

  const GatewayOptions& options() const noexcept { return options_; }
  Clock& clock() noexcept { return *clock_; }
  CallLog& log() noexcept { return *log_; }
  std::shared_ptr<CallLog> shared_log() const { return log_; }

 private:
  template <class Fn>
  auto with_retries(Fn&& fn) -> decltype(fn());
  static ChatRequest with_reask(ChatRequest req);

  std::shared_ptr<Provider> provider_;
  GatewayOptions options_;
  std::shared_ptr<Clock> clock_;
  std::shared_ptr<CallLog> log_;
  RateLimiter limiter_;
};

template <class T>
T Gateway::chat_structured(const ChatRequest& req, const std::string& kind,
                           const std::function<T(const std::string&)>& parse) {
  ChatRequest current = req;
  std::string last_problem;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    const auto reply = chat(current);
    try {
      return parse(reply.text);
    } catch (const ParseFailure& e) {
      last_problem = e.what();
    }
    if (attempt == 0) current = with_reask(req);
  }
  throw FormatError(kind, last_problem);
}

// Parses the first balanced top-level {...} in `text` (code fences and
// surrounding prose are tolerated). Throws ParseFailure.
nlohmann::json extract_object(const std::string& text);

}  // namespace lexcourt::gateway
