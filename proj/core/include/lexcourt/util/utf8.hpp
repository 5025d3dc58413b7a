#pragma once

#include <string>
#include <string_view>

namespace lexcourt::utf8 {

// Invalid sequences decode to U+FFFD; never throws.
std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

// wchar_t is UTF-32 on the platforms we build for; std::wregex works on it.
std::wstring to_wide(std::string_view bytes);
std::string from_wide(std::wstring_view wide);

bool is_cjk_ideograph(char32_t cp);

std::string trim(std::string_view s);

}  // namespace lexcourt::utf8
