#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "computads/category.hpp"
#include "computads/presheaf.hpp"
#include "computads/term.hpp"

namespace cptd {

struct RawArg;

// Name-level term, as written by users or read from JSON. Resolved against a
// computad into a Term; arguments at cells that are faces of other given
// arguments may be omitted and are then derived.
struct RawTerm {
  std::string var;
  std::string symbol;
  std::vector<RawArg> args;

  bool is_var() const { return symbol.empty(); }
  static RawTerm make_var(std::string name) { return RawTerm{std::move(name), {}, {}}; }
  static RawTerm make_app(std::string symbol, std::vector<RawArg> args);
};

struct RawArg {
  std::string cell;
  RawTerm term;
};

inline RawTerm RawTerm::make_app(std::string symbol, std::vector<RawArg> args) {
  return RawTerm{{}, std::move(symbol), std::move(args)};
}

struct FunctionSymbol {
  std::string id;
  SortId sort = 0;
  Presheaf arity;
  // Indexed by face position in base().into(sort); terms over the free computad on the arity.
  std::vector<Term> boundary;
};

struct SymbolDecl {
  std::string id;
  std::string sort;
  Presheaf arity;
  // Boundary terms on some faces (at least the generating ones); the rest are derived.
  std::vector<std::pair<std::string, RawTerm>> boundary;
};

class Signature;
using SignaturePtr = std::shared_ptr<const Signature>;

class Signature {
 public:
  static SignaturePtr create(CategoryPtr base, std::vector<SymbolDecl> decls);
  static SignaturePtr empty(CategoryPtr base);
  // Adds already-resolved symbols whose boundary terms refer to symbols of `lower`.
  static SignaturePtr extend(const SignaturePtr& lower, std::vector<FunctionSymbol> symbols);

  const CategoryPtr& base_ptr() const { return base_; }
  const DirectCategory& base() const { return *base_; }

  int num_symbols() const { return static_cast<int>(symbols_.size()); }
  const FunctionSymbol& symbol(int f) const { return symbols_.at(f); }
  const std::vector<FunctionSymbol>& symbols() const { return symbols_; }
  // Half-open index range of the symbols with output sort s.
  std::pair<int, int> symbols_of(SortId s) const;
  std::optional<int> find_symbol(const std::string& id) const;
  int symbol_index(const std::string& id) const;
  int dimension() const { return base_->max_dim(); }

  SignaturePtr restrict(int n) const;

 private:
  Signature() = default;
  void index();

  CategoryPtr base_;
  std::vector<FunctionSymbol> symbols_;
  std::vector<int> sort_begin_;
  std::unordered_map<std::string, int> by_id_;
};

}  // namespace cptd
