#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexcourt::retrieval {

// Dictionary-free tokenizer for mixed Chinese/Latin legal text.
//
// CJK runs become overlapping character bigrams ("合同纠纷" -> 合同 同纠 纠纷;
// a lone ideograph is kept as a unigram). Other runs are split on anything
// that is not a letter or digit and ASCII-lowercased. Full-width ASCII
// forms are folded to half-width first.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace lexcourt::retrieval
