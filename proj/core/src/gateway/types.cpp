#include "lexcourt/gateway/types.hpp"

#include "lexcourt/errors.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::gateway {

std::string to_string(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(const std::string& s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw PreconditionError("unknown message role '" + s + "'");
}

void ChatRequest::validate() const {
  if (model_id.empty()) throw PreconditionError("chat request: model_id is empty");
  if (messages.empty()) throw PreconditionError("chat request: messages must be non-empty");
  if (messages.front().role == Role::assistant)
    throw PreconditionError("chat request: first message must be system or user");
  if (temperature < 0.0 || temperature > 2.0)
    throw PreconditionError("chat request: temperature outside [0,2]");
  if (max_output_tokens <= 0) throw PreconditionError("chat request: max_output_tokens must be positive");
}

void EmbeddingRequest::validate() const {
  if (model_id.empty()) throw PreconditionError("embedding request: model_id is empty");
  if (texts.empty()) throw PreconditionError("embedding request: texts must be non-empty");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (utf8::trim(texts[i]).empty())
      throw PreconditionError("embedding request: text " + std::to_string(i) + " is blank");
  }
}

void ProviderConfig::validate() const {
  const auto scheme_end = endpoint_url.find("://");
  if (scheme_end == std::string::npos || scheme_end == 0 || scheme_end + 3 >= endpoint_url.size())
    throw PreconditionError("provider: endpoint_url must be absolute, got '" + endpoint_url + "'");
  if (max_retries < 0) throw PreconditionError("provider: max_retries must be >= 0");
  if (requests_per_minute < 1) throw PreconditionError("provider: requests_per_minute must be >= 1");
  if (!(timeout_seconds > 0.0)) throw PreconditionError("provider: timeout_seconds must be positive");
}

nlohmann::json to_json(const ChatRequest& req) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : req.messages) msgs.push_back({{"role", to_string(m.role)}, {"content", m.text}});
  nlohmann::json j = {{"model", req.model_id},
                      {"messages", std::move(msgs)},
                      {"temperature", req.temperature},
                      {"max_tokens", req.max_output_tokens}};
  if (req.response_format == ResponseFormat::structured_object)
    j["response_format"] = {{"type", "json_object"}};
  return j;
}

nlohmann::json to_json(const EmbeddingRequest& req) {
  return {{"model", req.model_id}, {"input", req.texts}};
}

ChatRequest chat_request_from_json(const nlohmann::json& j) {
  ChatRequest req;
  req.model_id = j.at("model").get<std::string>();
  for (const auto& m : j.at("messages"))
    req.messages.push_back({role_from_string(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
  req.temperature = j.value("temperature", 0.7);
  req.max_output_tokens = j.value("max_tokens", 2048);
  if (j.contains("response_format")) req.response_format = ResponseFormat::structured_object;
  return req;
}

std::string render_prompt(const ChatRequest& req) {
  std::string out;
  for (std::size_t i = 0; i < req.messages.size(); ++i) {
    if (i) out += "\n\n";
    out += to_string(req.messages[i].role);
    out += ":\n";
    out += req.messages[i].text;
  }
  return out;
}

}  // namespace lexcourt::gateway
