#include "computads/term.hpp"

#include <algorithm>
#include <unordered_map>

namespace cptd {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Term Term::var(SortId sort, int generator) {
  Term t;
  std::size_t h = mix(mix(0x51ed27, static_cast<std::size_t>(sort)), static_cast<std::size_t>(generator));
  t.node_ = std::make_shared<const Node>(Node{true, sort, generator, {}, 0, h});
  return t;
}

Term Term::app(SortId sort, int symbol, std::vector<Term> args) {
  Term t;
  int depth = 0;
  std::size_t h = mix(mix(0xa99, static_cast<std::size_t>(sort)), static_cast<std::size_t>(symbol));
  for (const auto& a : args) {
    depth = std::max(depth, a.depth());
    h = mix(h, a.hash());
  }
  t.node_ = std::make_shared<const Node>(Node{false, sort, symbol, std::move(args), depth + 1, h});
  return t;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.is_var != y.is_var || x.sort != y.sort || x.head != y.head || x.depth != y.depth ||
      x.args.size() != y.args.size())
    return false;
  for (std::size_t k = 0; k < x.args.size(); ++k)
    if (!(x.args[k] == y.args[k])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.depth <=> y.depth; c != 0) return c;
  if (x.is_var != y.is_var) return x.is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (auto c = x.head <=> y.head; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t k = 0; k < x.args.size(); ++k)
    if (auto c = x.args[k] <=> y.args[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

Term substitute(const Term& t, const std::function<Term(SortId, int)>& image) {
  std::unordered_map<const void*, Term> memo;
  std::function<Term(const Term&)> go = [&](const Term& s) -> Term {
    if (s.is_var()) return image(s.sort(), s.generator());
    auto it = memo.find(s.identity());
    if (it != memo.end()) return it->second;
    std::vector<Term> args;
    args.reserve(s.args().size());
    for (const auto& a : s.args()) args.push_back(go(a));
    Term r = Term::app(s.sort(), s.symbol(), std::move(args));
    memo.emplace(s.identity(), r);
    return r;
  };
  return go(t);
}

Term rename_vars(const Term& t, const std::vector<std::vector<int>>& rename) {
  return substitute(t, [&](SortId s, int g) { return Term::var(s, rename.at(s).at(g)); });
}

Term rename_symbols(const Term& t, const std::vector<int>& map) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_symbols(a, map));
  return Term::app(t.sort(), map.at(t.symbol()), std::move(args));
}

}  // namespace cptd
