#include "lexcourt/gateway/gateway.hpp"

#include <cmath>

namespace lexcourt::gateway {

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayOptions options, std::shared_ptr<Clock> clock,
                 std::shared_ptr<CallLog> log)
    : provider_(std::move(provider)),
      options_(std::move(options)),
      clock_(clock ? std::move(clock) : std::make_shared<SimulatedClock>()),
      log_(log ? std::move(log) : std::make_shared<CallLog>()),
      limiter_(options_.requests_per_minute, clock_) {
  if (!provider_) throw PreconditionError("gateway needs a provider");
  if (options_.max_retries < 0) throw PreconditionError("max_retries must be >= 0");
}

ChatRequest Gateway::request(std::vector<Message> messages, std::string task, ResponseFormat format) const {
  ChatRequest req;
  req.model_id = options_.model_id;
  req.messages = std::move(messages);
  req.temperature = options_.temperature;
  req.max_output_tokens = options_.max_output_tokens;
  req.response_format = format;
  req.task = std::move(task);
  return req;
}

template <class Fn>
auto Gateway::with_retries(Fn&& fn) -> decltype(fn()) {
  for (int attempt = 0;; ++attempt) {
    limiter_.acquire();
    try {
      return fn();
    } catch (const TransportError& e) {
      if (attempt >= options_.max_retries)
        throw RetriesExhaustedError(std::string("gave up after ") + std::to_string(attempt + 1) +
                                    " attempts: " + e.what());
      clock_->sleep_for(options_.retry_backoff_seconds * std::pow(2.0, attempt));
    }
  }
}

ChatReply Gateway::chat(const ChatRequest& req) {
  req.validate();
  CallRecord rec;
  rec.kind = "chat";
  rec.role = options_.role;
  rec.task = req.task;
  rec.request = to_json(req);
  rec.attributes = req.attributes;
  rec.timestamp = clock_->timestamp();
  const double start = clock_->now();
  try {
    auto reply = with_retries([&] { return provider_->chat(req); });
    rec.response = {{"text", reply.text},
                    {"usage",
                     {{"prompt_tokens", reply.usage.prompt_tokens},
                      {"completion_tokens", reply.usage.completion_tokens}}}};
    rec.latency_ms = (clock_->now() - start) * 1000.0;
    log_->record(std::move(rec));
    return reply;
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.latency_ms = (clock_->now() - start) * 1000.0;
    log_->record(std::move(rec));
    throw;
  }
}

std::vector<Vector> Gateway::embed(const EmbeddingRequest& req) {
  req.validate();
  CallRecord rec;
  rec.kind = "embed";
  rec.role = options_.role;
  rec.task = "embed";
  rec.request = to_json(req);
  rec.timestamp = clock_->timestamp();
  const double start = clock_->now();
  try {
    auto vectors = with_retries([&] { return provider_->embed(req); });
    if (vectors.size() != req.texts.size())
      throw ProtocolError("provider returned " + std::to_string(vectors.size()) + " vectors for " +
                          std::to_string(req.texts.size()) + " texts");
    for (const auto& v : vectors) {
      if (v.size() != vectors.front().size()) throw ProtocolError("embedding dimension mismatch across texts");
    }
    if (!vectors.empty() && vectors.front().empty()) throw ProtocolError("provider returned empty vectors");
    rec.response = {{"vectors", vectors}};
    rec.latency_ms = (clock_->now() - start) * 1000.0;
    log_->record(std::move(rec));
    return vectors;
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.latency_ms = (clock_->now() - start) * 1000.0;
    log_->record(std::move(rec));
    throw;
  }
}

std::vector<Vector> Gateway::embed(std::vector<std::string> texts) {
  return embed(EmbeddingRequest{options_.embedding_model_id, std::move(texts)});
}

ChatRequest Gateway::with_reask(ChatRequest req) {
  for (auto it = req.messages.rbegin(); it != req.messages.rend(); ++it) {
    if (it->role == Role::user) {
      it->text += "\n\n";
      it->text += kReaskInstruction;
      return req;
    }
  }
  req.messages.push_back({Role::user, kReaskInstruction});
  return req;
}

nlohmann::json extract_object(const std::string& text) {
  const auto open = text.find('{');
  if (open == std::string::npos) throw ParseFailure("reply contains no JSON object");
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) {
      try {
        auto j = nlohmann::json::parse(text.substr(open, i - open + 1));
        if (!j.is_object()) throw ParseFailure("reply is not an object");
        return j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseFailure(std::string("reply object is not valid JSON: ") + e.what());
      }
    }
  }
  throw ParseFailure("reply object is not closed");
}

}  // namespace lexcourt::gateway
