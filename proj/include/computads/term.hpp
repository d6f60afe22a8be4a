#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "computads/category.hpp"

namespace cptd {

// An immutable term tree. A Var refers to a generator by (sort, index) inside
// some computad; an App refers to a function symbol by index inside a
// signature and carries one argument per arity cell, in the arity's flat order.
// Equality is structural; ordering is by depth, then Var before App, then head
// index, then arguments lexicographically.
class Term {
 public:
  Term() = default;

  static Term var(SortId sort, int generator);
  static Term app(SortId sort, int symbol, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  SortId sort() const { return node_->sort; }
  int generator() const { return node_->head; }
  int symbol() const { return node_->head; }
  int head() const { return node_->head; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(int flat_cell) const { return node_->args.at(flat_cell); }
  int depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    SortId sort;
    int head;
    std::vector<Term> args;
    int depth;
    std::size_t hash;
  };
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Replaces every variable by the given image, preserving shared structure.
Term substitute(const Term& t, const std::function<Term(SortId, int)>& image);
// Replaces each generator reference (sort, index) by (sort, rename[sort][index]).
Term rename_vars(const Term& t, const std::vector<std::vector<int>>& rename);
// Replaces every symbol index f by map[f].
Term rename_symbols(const Term& t, const std::vector<int>& map);

}  // namespace cptd

template <>
struct std::hash<cptd::Term> {
  std::size_t operator()(const cptd::Term& t) const { return t.hash(); }
};
