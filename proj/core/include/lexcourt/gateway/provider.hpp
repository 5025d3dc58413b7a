#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lexcourt/errors.hpp"
#include "lexcourt/gateway/call_log.hpp"
#include "lexcourt/gateway/types.hpp"

namespace lexcourt::gateway {

// Retriable failure below the protocol layer (connection refused, timeout,
// HTTP 429/5xx). The gateway retries these; anything else propagates.
class TransportError : public Error {
 public:
  using Error::Error;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual ChatReply chat(const ChatRequest& req) = 0;
  virtual std::vector<Vector> embed(const EmbeddingRequest& req) = 0;
};

using Responder = std::function<std::string(const ChatRequest&)>;
using Embedder = std::function<Vector(const std::string&)>;

// Deterministic in-process provider.
//
// Scripted mode hands out canned replies in order and raises
// ScriptExhaustedError once they run out. Pure-function mode computes the
// reply from the request alone, by default "mock:<first 16 hex of the
// prompt's SHA-256>". Embeddings come from `Embedder`, by default a hash of
// the text spread over a fixed dimension.
class MockProvider final : public Provider {
 public:
  static std::shared_ptr<MockProvider> scripted(std::vector<std::string> script);
  static std::shared_ptr<MockProvider> pure(Responder responder = digest_reply);

  static std::string digest_reply(const ChatRequest& req);
  static Embedder hash_embedder(int dimension);
  // Looks texts up in a fixed table; unknown texts raise ProtocolError.
  static Embedder table_embedder(std::map<std::string, Vector> table);

  MockProvider& with_embedder(Embedder embedder);

  ChatReply chat(const ChatRequest& req) override;
  std::vector<Vector> embed(const EmbeddingRequest& req) override;

  std::size_t chat_calls() const;
  std::size_t remaining() const;

 private:
  MockProvider() = default;

  mutable std::mutex mu_;
  bool scripted_ = false;
  std::vector<std::string> script_;
  std::size_t cursor_ = 0;
  std::size_t chat_calls_ = 0;
  Responder responder_;
  Embedder embedder_ = hash_embedder(8);
};

// Serves the responses recorded in a call log, in call-index order, for one
// gateway role. With `strict`, each incoming request must equal the logged
// one; a divergence raises ProtocolError.
class ReplayProvider final : public Provider {
 public:
  ReplayProvider(const std::vector<CallRecord>& records, const std::string& role, bool strict = true);

  ChatReply chat(const ChatRequest& req) override;
  std::vector<Vector> embed(const EmbeddingRequest& req) override;

 private:
  std::mutex mu_;
  std::vector<CallRecord> chats_;
  std::vector<CallRecord> embeds_;
  std::size_t chat_cursor_ = 0;
  std::size_t embed_cursor_ = 0;
  bool strict_;
};

// OpenAI-style chat-completions and embeddings endpoints over HTTP(S).
// POST {endpoint}/chat/completions and {endpoint}/embeddings, bearer token
// from the configured environment variable.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);

  ChatReply chat(const ChatRequest& req) override;
  std::vector<Vector> embed(const EmbeddingRequest& req) override;

  // Body parsing is exposed for tests of the wire contract.
  static ChatReply parse_chat_body(const std::string& body);
  static std::vector<Vector> parse_embedding_body(const std::string& body, std::size_t expected);

 private:
  std::string post(const std::string& path, const std::string& body);

  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string base_path_;
};

}  // namespace lexcourt::gateway
