#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lexcourt {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// 64-bit FNV-1a; cheap, stable across platforms, not for security.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace lexcourt
