#include "lexcourt/metrics/extract.hpp"

#include <regex>

#include "lexcourt/metrics/numerals.hpp"
#include "lexcourt/util/utf8.hpp"

namespace lexcourt::metrics {

namespace {

#define LEXCOURT_NUM L"[0-9０-９零〇一二两三四五六七八九十百千万亿壹贰叁肆伍陆柒捌玖拾佰仟]"

const std::wregex& citation_regex() {
  static const std::wregex re(L"《([^》]+)》|第(" LEXCOURT_NUM L"+)条");
  return re;
}

int to_int(const std::wstring& w) {
  auto v = parse_chinese_number(utf8::from_wide(w));
  return v ? static_cast<int>(*v) : -1;
}

}  // namespace

std::set<ArticleRef> extract_article_refs(const std::string& text) {
  std::set<ArticleRef> refs;
  const auto wide = utf8::to_wide(text);
  std::optional<std::string> statute;
  for (std::wsregex_iterator it(wide.begin(), wide.end(), citation_regex()), end; it != end; ++it) {
    const auto& m = *it;
    if (m[1].matched) {
      statute = corpus::normalize_statute_name(utf8::from_wide(m[1].str()));
      continue;
    }
    if (!statute) continue;
    const int n = to_int(m[2].str());
    if (n > 0) refs.emplace(*statute, n);
  }
  return refs;
}

std::string render_article_ref(const ArticleRef& ref) {
  return "《" + ref.first + "》第" + std::to_string(ref.second) + "条";
}

std::vector<std::string> resolve_article_refs(const std::set<ArticleRef>& refs, const corpus::ArticleStore& articles) {
  std::vector<std::string> ids;
  for (const auto& r : refs) {
    auto id = articles.resolve(r.first, r.second);
    ids.push_back(id ? *id : r.first + "#" + std::to_string(r.second));
  }
  return ids;
}

CriminalFields extract_criminal(const std::string& text) {
  // The charge ends at the first 罪 followed by a delimiter, so names that
  // contain 犯罪 or 、 survive while 犯罪事实 / 构成犯罪 do not match.
  static const std::wregex charge_re(L"犯([^，。；：,.;:\\s]{1,30}?)罪(?=[，。、；：,.;:\\s（(]|一案|判|$)");
  static const std::wregex charge_fallback_re(
      L"构成(?!犯罪)([^，。；：,.;:\\s]{1,30}?)罪(?=[，。、；：,.;:\\s（(]|一案|判|$)");
  static const std::wregex term_re(L"(无期徒刑)|(?:有期徒刑|拘役|管制)(?:(" LEXCOURT_NUM L"+)年)?(?:(" LEXCOURT_NUM
                                   L"+)个?月)?");
  static const std::wregex fine_re(L"罚金(?:人民币)?([0-9０-９.,，零〇一二两三四五六七八九十百千万亿壹贰叁肆伍陆柒捌玖拾佰仟]+)元");

  CriminalFields out;
  const auto wide = utf8::to_wide(text);
  std::wsmatch m;
  if (std::regex_search(wide, m, charge_re) || std::regex_search(wide, m, charge_fallback_re))
    out.charge = utf8::from_wide(m[1].str()) + "罪";

  // With several charges the combined sentence after 决定执行 is the operative one.
  auto from = wide.cbegin();
  if (const auto pos = wide.find(L"决定执行"); pos != std::wstring::npos) from += static_cast<std::ptrdiff_t>(pos);

  for (std::wsregex_iterator it(from, wide.cend(), term_re), end; it != end; ++it) {
    const auto& t = *it;
    if (t[1].matched) {
      out.term_months = kLifeTerm;
      break;
    }
    if (!t[2].matched && !t[3].matched) continue;  // the sentence type without a duration
    int months = 0;
    if (t[2].matched) months += 12 * to_int(t[2].str());
    if (t[3].matched) months += to_int(t[3].str());
    out.term_months = months;
    break;
  }

  if (std::regex_search(from, wide.cend(), m, fine_re) || std::regex_search(wide, m, fine_re))
    out.fine_amount = parse_amount(utf8::from_wide(m[1].str()));
  return out;
}

#undef LEXCOURT_NUM

}  // namespace lexcourt::metrics
