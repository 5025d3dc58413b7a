#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace lexcourt::gateway {

enum class Role { system, user, assistant };
enum class ResponseFormat { free_text, structured_object };

std::string to_string(Role r);
Role role_from_string(const std::string& s);

struct Message {
  Role role;
  std::string text;
};

struct ChatRequest {
  std::string model_id;
  std::vector<Message> messages;
  double temperature = 0.7;
  int max_output_tokens = 2048;
  ResponseFormat response_format = ResponseFormat::free_text;

  // Not sent over the wire. `task` labels the pipeline step for the call
  // log; `attributes` carry hints that simulated providers may use.
  std::string task;
  std::map<std::string, std::string> attributes;

  // Throws PreconditionError on invariant violation.
  void validate() const;
};

struct EmbeddingRequest {
  std::string model_id;
  std::vector<std::string> texts;

  void validate() const;
};

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct ChatReply {
  std::string text;
  TokenUsage usage;
};

using Vector = std::vector<float>;

// Connection settings for an HTTP-backed provider.
struct ProviderConfig {
  std::string endpoint_url;
  std::string api_key_env_var;
  int max_retries = 2;
  int requests_per_minute = 60;
  double timeout_seconds = 60.0;

  void validate() const;
};

nlohmann::json to_json(const ChatRequest& req);
nlohmann::json to_json(const EmbeddingRequest& req);
ChatRequest chat_request_from_json(const nlohmann::json& j);

// Flattens a request into "role:\ntext" blocks; used for digests and as the
// stored generation prompt of preference pairs.
std::string render_prompt(const ChatRequest& req);

}  // namespace lexcourt::gateway
