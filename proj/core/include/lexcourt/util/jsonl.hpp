#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace lexcourt::jsonl {

using nlohmann::json;

struct Line {
  std::size_t number;  // 1-based
  json value;
};

// Parses every non-blank line. Throws MalformedInputError naming the line on
// the first syntax error. Missing file is a PreconditionError.
std::vector<Line> read(const std::filesystem::path& path);

void append(const std::filesystem::path& path, const std::vector<json>& records);

// Writes to a sibling temp file then renames, so readers never see a torn file.
void write_atomic(const std::filesystem::path& path, const std::vector<json>& records);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

}  // namespace lexcourt::jsonl
