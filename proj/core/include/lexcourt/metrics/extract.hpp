#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexcourt/corpus/store.hpp"

namespace lexcourt::metrics {

// (normalized statute name, article number)
using ArticleRef = std::pair<std::string, int>;

// Every 《statute》第N条 citation in `text`. A bare 第N条 attaches to the most
// recently named statute and is skipped when none precedes it.
std::set<ArticleRef> extract_article_refs(const std::string& text);

// Canonical citation text for a reference, e.g. 《民法典》第509条.
std::string render_article_ref(const ArticleRef& ref);

// Maps references onto corpus ids; unresolved references become
// "statute#number" so they still count as predictions.
std::vector<std::string> resolve_article_refs(const std::set<ArticleRef>& refs, const corpus::ArticleStore& articles);

inline constexpr int kLifeTerm = -1;

struct CriminalFields {
  std::optional<std::string> charge;
  std::optional<int> term_months;  // kLifeTerm for life imprisonment
  std::optional<double> fine_amount;

  bool operator==(const CriminalFields&) const = default;
};

// Charge from 犯…罪 (falling back to 构成…罪), term from 有期徒刑 / 拘役 /
// 管制 years and months, or 无期徒刑, fine from 罚金…元. The first
// occurrence of each wins, except that a combined sentence after 决定执行
// takes precedence for term and fine. Absent components stay empty.
CriminalFields extract_criminal(const std::string& text);

}  // namespace lexcourt::metrics
