#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace lexcourt::metrics {

// Chinese numerals as written in judgments: 五百零九, 十五, 两千, 一〇五,
// financial forms (伍佰), and mixtures with Arabic digits (3万5000).
// Full-width digits are accepted. nullopt for anything else.
std::optional<std::int64_t> parse_chinese_number(std::u32string_view text);
std::optional<std::int64_t> parse_chinese_number(std::string_view utf8_text);

// Money amounts: the above plus thousands separators and decimals
// ("5,000", "1.5万").
std::optional<double> parse_amount(std::string_view utf8_text);

}  // namespace lexcourt::metrics
