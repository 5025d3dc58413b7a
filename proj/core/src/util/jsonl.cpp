#include "lexcourt/util/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "lexcourt/errors.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::jsonl {

std::vector<Line> read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path.string());
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (utf8::trim(raw).empty()) continue;
    try {
      out.push_back({number, json::parse(raw)});
    } catch (const json::parse_error& e) {
      throw MalformedInputError(path.string() + ":" + std::to_string(number) + ": " + e.what(), number);
    }
  }
  return out;
}

void append(const std::filesystem::path& path, const std::vector<json>& records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw PreconditionError("cannot append to " + path.string());
  for (const auto& r : records) out << r.dump() << '\n';
  out.flush();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

void write_atomic(const std::filesystem::path& path, const std::vector<json>& records) {
  std::string text;
  for (const auto& r : records) {
    text += r.dump();
    text += '\n';
  }
  write_text_atomic(path, text);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lexcourt::jsonl
