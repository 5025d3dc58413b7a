#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace lexcourt::pipeline {

// Reads the TOML subset run configs use: comments, [table] / [a.b]
// headers, bare or quoted keys, and values that are basic or literal strings,
// integers, floats, booleans or single-line arrays of those. Tables become
// nested objects. Problems are collected and raised together as a
// ConfigError naming each line.
nlohmann::json parse_toml(const std::string& text);

}  // namespace lexcourt::pipeline
