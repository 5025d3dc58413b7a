#include "lexcourt/retrieval/tokenizer.hpp"

#include "lexcourt/util/utf8.hpp"

namespace lexcourt::retrieval {

namespace {

enum class Kind { separator, cjk, word };

char32_t fold(char32_t cp) {
  if (cp >= 0xFF01 && cp <= 0xFF5E) cp = cp - 0xFF01 + 0x21;  // full-width ASCII
  if (cp >= U'A' && cp <= U'Z') cp = cp - U'A' + U'a';
  return cp;
}

Kind classify(char32_t cp) {
  if (cp < 0x80) {
    const bool alnum = (cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9');
    return alnum ? Kind::word : Kind::separator;
  }
  if (utf8::is_cjk_ideograph(cp) || (cp >= 0x3040 && cp <= 0x30FF) || (cp >= 0xAC00 && cp <= 0xD7AF))
    return Kind::cjk;
  // Latin-1 punctuation, general punctuation, CJK symbols, full-width forms,
  // CJK compatibility forms, replacement char.
  if ((cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 || (cp >= 0x2000 && cp <= 0x2BFF) ||
      (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFE30 && cp <= 0xFE4F) || (cp >= 0xFF00 && cp <= 0xFFEF) ||
      cp == 0xFFFD)
    return Kind::separator;
  return Kind::word;
}

void flush_cjk(const std::u32string& run, std::vector<std::string>& out) {
  if (run.size() == 1) {
    out.push_back(utf8::encode(run));
    return;
  }
  for (std::size_t i = 0; i + 1 < run.size(); ++i) out.push_back(utf8::encode(std::u32string_view(run).substr(i, 2)));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::u32string run;
  Kind run_kind = Kind::separator;
  const auto flush = [&] {
    if (run.empty()) return;
    if (run_kind == Kind::cjk) flush_cjk(run, out);
    else out.push_back(utf8::encode(run));
    run.clear();
  };
  for (char32_t raw : utf8::decode(text)) {
    const char32_t cp = fold(raw);
    const Kind kind = classify(cp);
    if (kind != run_kind) {
      flush();
      run_kind = kind;
    }
    if (kind != Kind::separator) run.push_back(cp);
  }
  flush();
  return out;
}

}  // namespace lexcourt::retrieval
