#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>

#include "lexcourt/gateway/provider.hpp"

namespace lexcourt::gateway {

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto scheme_end = config_.endpoint_url.find("://");
  const auto path_start = config_.endpoint_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    scheme_host_port_ = config_.endpoint_url;
    base_path_.clear();
  } else {
    scheme_host_port_ = config_.endpoint_url.substr(0, path_start);
    base_path_ = config_.endpoint_url.substr(path_start);
    while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
  }
}

std::string HttpProvider::post(const std::string& path, const std::string& body) {
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(config_.timeout_seconds);
  const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (!config_.api_key_env_var.empty()) {
    if (const char* key = std::getenv(config_.api_key_env_var.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = client.Post(base_path_ + path, headers, body, "application/json");
  if (!res) throw TransportError("POST " + path + " failed: " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500)
    throw TransportError("POST " + path + " returned HTTP " + std::to_string(res->status));
  if (res->status < 200 || res->status >= 300)
    throw ProtocolError("POST " + path + " returned HTTP " + std::to_string(res->status) + ": " + res->body);
  return res->body;
}

ChatReply HttpProvider::parse_chat_body(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    ChatReply reply;
    reply.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
      reply.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
      reply.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
    }
    return reply;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed chat completion body: ") + e.what());
  }
}

std::vector<Vector> HttpProvider::parse_embedding_body(const std::string& body, std::size_t expected) {
  std::vector<Vector> out;
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& data = j.at("data");
    out.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      // Honor an explicit index when present; providers may reorder.
      const auto idx = data[i].contains("index") ? data[i]["index"].get<std::size_t>() : i;
      if (idx >= out.size()) throw ProtocolError("embedding index out of range");
      out[idx] = data[i].at("embedding").get<Vector>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed embedding body: ") + e.what());
  }
  if (out.size() != expected)
    throw ProtocolError("embedding count " + std::to_string(out.size()) + " != " + std::to_string(expected));
  return out;
}

ChatReply HttpProvider::chat(const ChatRequest& req) {
  return parse_chat_body(post("/chat/completions", to_json(req).dump()));
}

std::vector<Vector> HttpProvider::embed(const EmbeddingRequest& req) {
  return parse_embedding_body(post("/embeddings", to_json(req).dump()), req.texts.size());
}

}  // namespace lexcourt::gateway
