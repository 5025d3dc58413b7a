#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lexcourt/casegen/legal_case.hpp"
#include "lexcourt/corpus/store.hpp"
#include "lexcourt/gateway/gateway.hpp"
#include "lexcourt/gateway/provider.hpp"

namespace lexcourt::testkit {

#ifndef LEXCOURT_SAMPLE_DIR
#define LEXCOURT_SAMPLE_DIR "data/sample"
#endif

inline std::filesystem::path sample_dir() { return LEXCOURT_SAMPLE_DIR; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("lexcourt-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct GatewayHarness {
  std::shared_ptr<gateway::SimulatedClock> clock = std::make_shared<gateway::SimulatedClock>();
  std::shared_ptr<gateway::CallLog> log = std::make_shared<gateway::CallLog>();

  std::unique_ptr<gateway::Gateway> make(std::shared_ptr<gateway::Provider> provider, const std::string& role,
                                         int rpm = 600, int max_retries = 2) {
    gateway::GatewayOptions o;
    o.role = role;
    o.requests_per_minute = rpm;
    o.max_retries = max_retries;
    return std::make_unique<gateway::Gateway>(std::move(provider), o, clock, log);
  }
};

inline corpus::LawArticle article(std::string id, std::string statute, int number, std::string body,
                                  corpus::ArticleCategory cat = corpus::ArticleCategory::civil_admin) {
  corpus::LawArticle a;
  a.article_id = std::move(id);
  a.statute_name = std::move(statute);
  a.article_number = number;
  a.body = std::move(body);
  a.category = cat;
  return a;
}

inline corpus::ArticleStore sample_articles() {
  corpus::ArticleStore store;
  store.ingest_file(sample_dir() / "articles.jsonl");
  return store;
}

inline std::vector<LegalCase> sample_cases() { return load_cases((sample_dir() / "cases.jsonl").string()); }

}  // namespace lexcourt::testkit
