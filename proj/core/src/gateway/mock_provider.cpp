#include "lexcourt/gateway/provider.hpp"
#include "lexcourt/util/digest.hpp"

namespace lexcourt::gateway {

std::shared_ptr<MockProvider> MockProvider::scripted(std::vector<std::string> script) {
  if (script.empty()) throw PreconditionError("scripted mock needs a non-empty script");
  std::shared_ptr<MockProvider> p(new MockProvider());
  p->scripted_ = true;
  p->script_ = std::move(script);
  return p;
}

std::shared_ptr<MockProvider> MockProvider::pure(Responder responder) {
  std::shared_ptr<MockProvider> p(new MockProvider());
  p->responder_ = responder ? std::move(responder) : Responder(digest_reply);
  return p;
}

std::string MockProvider::digest_reply(const ChatRequest& req) {
  return "mock:" + sha256_hex(render_prompt(req)).substr(0, 16);
}

Embedder MockProvider::hash_embedder(int dimension) {
  if (dimension <= 0) throw PreconditionError("mock embedding dimension must be positive");
  return [dimension](const std::string& text) {
    Vector v(static_cast<std::size_t>(dimension));
    for (int i = 0; i < dimension; ++i) {
      const auto h = fnv1a64(text + "#" + std::to_string(i));
      // Map the top 24 bits onto [-1, 1).
      v[static_cast<std::size_t>(i)] = static_cast<float>((h >> 40) / 8388608.0 - 1.0);
    }
    return v;
  };
}

Embedder MockProvider::table_embedder(std::map<std::string, Vector> table) {
  return [table = std::move(table)](const std::string& text) {
    auto it = table.find(text);
    if (it == table.end()) throw ProtocolError("table embedder has no vector for '" + text + "'");
    return it->second;
  };
}

MockProvider& MockProvider::with_embedder(Embedder embedder) {
  std::lock_guard lock(mu_);
  embedder_ = std::move(embedder);
  return *this;
}

ChatReply MockProvider::chat(const ChatRequest& req) {
  std::lock_guard lock(mu_);
  ++chat_calls_;
  ChatReply reply;
  if (scripted_) {
    if (cursor_ >= script_.size())
      throw ScriptExhaustedError("mock script exhausted after " + std::to_string(script_.size()) + " replies");
    reply.text = script_[cursor_++];
  } else {
    reply.text = responder_(req);
  }
  for (const auto& m : req.messages) reply.usage.prompt_tokens += static_cast<int>(m.text.size() / 4 + 1);
  reply.usage.completion_tokens = static_cast<int>(reply.text.size() / 4 + 1);
  return reply;
}

std::vector<Vector> MockProvider::embed(const EmbeddingRequest& req) {
  std::lock_guard lock(mu_);
  std::vector<Vector> out;
  out.reserve(req.texts.size());
  for (const auto& t : req.texts) out.push_back(embedder_(t));
  return out;
}

std::size_t MockProvider::chat_calls() const {
  std::lock_guard lock(mu_);
  return chat_calls_;
}

std::size_t MockProvider::remaining() const {
  std::lock_guard lock(mu_);
  return scripted_ ? script_.size() - cursor_ : 0;
}

ReplayProvider::ReplayProvider(const std::vector<CallRecord>& records, const std::string& role, bool strict)
    : strict_(strict) {
  for (const auto& r : records) {
    if (r.role != role || r.response.is_null()) continue;
    (r.kind == "embed" ? embeds_ : chats_).push_back(r);
  }
}

ChatReply ReplayProvider::chat(const ChatRequest& req) {
  std::lock_guard lock(mu_);
  if (chat_cursor_ >= chats_.size()) throw ScriptExhaustedError("replay log has no more chat records");
  const auto& rec = chats_[chat_cursor_++];
  if (strict_ && rec.request != to_json(req))
    throw ProtocolError("replay divergence at call " + std::to_string(rec.call_index));
  ChatReply reply;
  reply.text = rec.response.at("text").get<std::string>();
  return reply;
}

std::vector<Vector> ReplayProvider::embed(const EmbeddingRequest& req) {
  std::lock_guard lock(mu_);
  if (embed_cursor_ >= embeds_.size()) throw ScriptExhaustedError("replay log has no more embed records");
  const auto& rec = embeds_[embed_cursor_++];
  if (strict_ && rec.request != to_json(req))
    throw ProtocolError("replay divergence at call " + std::to_string(rec.call_index));
  return rec.response.at("vectors").get<std::vector<Vector>>();
}

}  // namespace lexcourt::gateway
