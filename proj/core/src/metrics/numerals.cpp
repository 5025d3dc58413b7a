#include "lexcourt/metrics/numerals.hpp"

#include <cmath>
#include <string>

#include "lexcourt/util/utf8.hpp"

namespace lexcourt::metrics {

namespace {

int digit_value(char32_t c) {
  if (c >= U'0' && c <= U'9') return static_cast<int>(c - U'0');
  if (c >= U'０' && c <= U'９') return static_cast<int>(c - U'０');
  switch (c) {
    case U'零': case U'〇': return 0;
    case U'一': case U'壹': return 1;
    case U'二': case U'两': case U'贰': return 2;
    case U'三': case U'叁': return 3;
    case U'四': case U'肆': return 4;
    case U'五': case U'伍': return 5;
    case U'六': case U'陆': return 6;
    case U'七': case U'柒': return 7;
    case U'八': case U'捌': return 8;
    case U'九': case U'玖': return 9;
    default: return -1;
  }
}

bool is_arabic(char32_t c) { return (c >= U'0' && c <= U'9') || (c >= U'０' && c <= U'９'); }

std::int64_t small_unit(char32_t c) {
  switch (c) {
    case U'十': case U'拾': return 10;
    case U'百': case U'佰': return 100;
    case U'千': case U'仟': return 1000;
    default: return 0;
  }
}

}  // namespace

std::optional<std::int64_t> parse_chinese_number(std::u32string_view text) {
  if (text.empty()) return std::nullopt;
  bool has_unit = false;
  for (char32_t c : text) {
    if (small_unit(c) || c == U'万' || c == U'亿') has_unit = true;
    else if (digit_value(c) < 0) return std::nullopt;
  }
  if (!has_unit) {
    // Positional digit string: 一〇五, 2021.
    std::int64_t v = 0;
    for (char32_t c : text) v = v * 10 + digit_value(c);
    return v;
  }

  std::int64_t total = 0, section = 0, number = 0;
  bool have_number = false, prev_arabic = false;
  for (char32_t c : text) {
    if (c == U'零' || c == U'〇') {  // placeholder between units
      number = 0;
      have_number = false;
      prev_arabic = false;
      continue;
    }
    if (int d = digit_value(c); d >= 0) {
      const bool arabic = is_arabic(c);
      number = (arabic && prev_arabic) ? number * 10 + d : d;
      have_number = true;
      prev_arabic = arabic;
      continue;
    }
    prev_arabic = false;
    if (auto unit = small_unit(c)) {
      section += (have_number ? number : 1) * unit;
    } else if (c == U'万') {
      if (!have_number && section == 0) return std::nullopt;
      total += (section + number) * 10000;
      section = 0;
    } else {  // 亿
      if (!have_number && section == 0 && total == 0) return std::nullopt;
      total = (total + section + number) * 100000000;
      section = 0;
    }
    number = 0;
    have_number = false;
  }
  return total + section + number;
}

std::optional<std::int64_t> parse_chinese_number(std::string_view utf8_text) {
  return parse_chinese_number(std::u32string_view(utf8::decode(utf8_text)));
}

std::optional<double> parse_amount(std::string_view utf8_text) {
  std::u32string text;
  for (char32_t c : utf8::decode(utf8_text))
    if (c != U',' && c != U'，' && c != U' ') text += c;
  if (text.empty()) return std::nullopt;

  // Arabic value with optional decimals and a trailing 万/亿 multiplier.
  std::size_t i = 0;
  std::string ascii;
  while (i < text.size() && (is_arabic(text[i]) || text[i] == U'.' || text[i] == U'．')) {
    const char32_t c = text[i];
    ascii += (c == U'.' || c == U'．') ? '.' : static_cast<char>('0' + digit_value(c));
    ++i;
  }
  if (!ascii.empty() && ascii.find('.') != std::string::npos) {
    if (ascii.front() == '.' || ascii.back() == '.' || ascii.find('.') != ascii.rfind('.')) return std::nullopt;
    double v = std::stod(ascii);
    const auto rest = text.substr(i);
    if (rest.empty()) return v;
    if (rest == U"万") return v * 10000;
    if (rest == U"亿") return v * 100000000;
    return std::nullopt;
  }
  if (auto v = parse_chinese_number(std::u32string_view(text))) return static_cast<double>(*v);
  return std::nullopt;
}

}  // namespace lexcourt::metrics
