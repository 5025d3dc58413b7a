#include "lexcourt/pipeline/toml.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "lexcourt/errors.hpp"

namespace lexcourt::pipeline {

using nlohmann::json;

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size() || s[i] == '#';
  }
};

class LineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool bare_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string parse_string(Cursor& c) {
  ++c.i;  // opening quote
  std::string out;
  while (c.i < c.s.size()) {
    const char ch = c.s[c.i++];
    if (ch == '"') return out;
    if (ch != '\\') {
      out += ch;
      continue;
    }
    if (c.i >= c.s.size()) break;
    switch (const char e = c.s[c.i++]) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default: throw LineError(std::string("unsupported escape \\") + e);
    }
  }
  throw LineError("unterminated string");
}

// 'literal' strings: no escapes.
std::string parse_literal(Cursor& c) {
  const auto close = c.s.find('\'', c.i + 1);
  if (close == std::string::npos) throw LineError("unterminated string");
  std::string out = c.s.substr(c.i + 1, close - c.i - 1);
  c.i = close + 1;
  return out;
}

std::vector<std::string> parse_key(Cursor& c) {
  std::vector<std::string> parts;
  for (;;) {
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == '"') {
      parts.push_back(parse_string(c));
    } else if (c.i < c.s.size() && c.s[c.i] == '\'') {
      parts.push_back(parse_literal(c));
    } else {
      const auto start = c.i;
      while (c.i < c.s.size() && bare_key_char(c.s[c.i])) ++c.i;
      if (start == c.i) throw LineError("expected a key");
      parts.push_back(c.s.substr(start, c.i - start));
    }
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == '.') {
      ++c.i;
      continue;
    }
    return parts;
  }
}

json parse_value(Cursor& c) {
  c.skip_ws();
  if (c.i >= c.s.size()) throw LineError("missing value");
  const char ch = c.s[c.i];
  if (ch == '"') return parse_string(c);
  if (ch == '\'') return parse_literal(c);
  if (ch == '[') {
    ++c.i;
    json arr = json::array();
    for (;;) {
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == ']') {
        ++c.i;
        return arr;
      }
      arr.push_back(parse_value(c));
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == ',') {
        ++c.i;
        continue;
      }
      if (c.i < c.s.size() && c.s[c.i] == ']') {
        ++c.i;
        return arr;
      }
      throw LineError("expected ',' or ']' in array");
    }
  }
  const auto start = c.i;
  while (c.i < c.s.size() && !std::isspace(static_cast<unsigned char>(c.s[c.i])) && c.s[c.i] != ',' &&
         c.s[c.i] != ']' && c.s[c.i] != '#')
    ++c.i;
  std::string tok = c.s.substr(start, c.i - start);
  if (tok == "true") return true;
  if (tok == "false") return false;
  std::string digits;
  for (char d : tok)
    if (d != '_') digits += d;
  if (digits.empty()) throw LineError("missing value");
  std::size_t used = 0;
  try {
    if (digits.find_first_of(".eE") == std::string::npos) {
      const long long v = std::stoll(digits, &used);
      if (used == digits.size()) return v;
    } else {
      const double v = std::stod(digits, &used);
      if (used == digits.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw LineError("cannot read value '" + tok + "'");
}

json* descend(json& root, const std::vector<std::string>& path) {
  json* node = &root;
  for (std::size_t k = 0; k < path.size(); ++k) {
    auto& child = (*node)[path[k]];
    if (child.is_null()) child = json::object();
    if (!child.is_object())
      throw LineError("'" + path[k] + "' is already a value, not a table");
    node = &child;
  }
  return node;
}

std::string dotted(const std::vector<std::string>& path) {
  std::string out;
  for (const auto& p : path) out += (out.empty() ? "" : ".") + p;
  return out;
}

}  // namespace

json parse_toml(const std::string& text) {
  json root = json::object();
  std::vector<std::string> table;
  std::set<std::string> headers;
  std::vector<std::string> problems;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Cursor c{line};
    try {
      if (c.done()) continue;
      if (line[c.i] == '[') {
        ++c.i;
        auto path = parse_key(c);
        if (c.i >= line.size() || line[c.i] != ']') throw LineError("expected ']' after table name");
        ++c.i;
        if (!c.done()) throw LineError("unexpected text after table header");
        if (!headers.insert(dotted(path)).second) throw LineError("table [" + dotted(path) + "] is defined twice");
        descend(root, path);
        table = std::move(path);
        continue;
      }
      auto key = parse_key(c);
      if (c.i >= line.size() || line[c.i] != '=') throw LineError("expected '=' after key");
      ++c.i;
      auto value = parse_value(c);
      if (!c.done()) throw LineError("unexpected text after value");
      std::vector<std::string> parent = table;
      parent.insert(parent.end(), key.begin(), key.end() - 1);
      json* node = descend(root, parent);
      if (node->contains(key.back()))
        throw LineError("key '" + dotted(parent) + (parent.empty() ? "" : ".") + key.back() + "' is defined twice");
      (*node)[key.back()] = std::move(value);
    } catch (const LineError& e) {
      problems.push_back("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(problems);
  return root;
}

}  // namespace lexcourt::pipeline
