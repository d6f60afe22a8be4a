#include "computads/signature.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "computads/computad.hpp"
#include "computads/error.hpp"

namespace cptd {

namespace {

struct PendingSymbol {
  SymbolDecl decl;
  SortId sort;
};

FunctionSymbol resolve_symbol(const SignaturePtr& lower, PendingSymbol p) {
  const auto& cat = lower->base();
  FunctionSymbol f;
  f.id = p.decl.id;
  f.sort = p.sort;
  f.arity = std::move(p.decl.arity);
  auto ctx = Computad::free(f.arity, lower);
  auto faces = cat.into(f.sort);
  f.boundary.assign(faces.size(), Term());
  for (const auto& [face_id, raw] : p.decl.boundary) {
    auto face = cat.find_arrow(face_id);
    if (!face || cat.arrow(*face).identity || cat.arrow(*face).dst != f.sort)
      fail(ErrorKind::BoundaryIllTyped, "symbol " + f.id + ": " + face_id + " is not a face into sort " +
                                            cat.sort(f.sort).id);
    Term t;
    try {
      t = resolve_term(*ctx, raw);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownSymbol) throw;
      fail(ErrorKind::BoundaryIllTyped, "symbol " + f.id + ", face " + face_id + ": " + e.what());
    }
    if (t.sort() != cat.arrow(*face).src)
      fail(ErrorKind::BoundaryIllTyped, "symbol " + f.id + ": boundary on face " + face_id + " has sort " +
                                            cat.sort(t.sort()).id + ", expected " +
                                            cat.sort(cat.arrow(*face).src).id);
    f.boundary[cat.face_position(*face)] = t;
  }
  detail::complete_face_family(*ctx, f.sort, f.boundary, ErrorKind::BoundaryIllTyped, "symbol " + f.id);
  detail::check_face_family(*ctx, f.sort, f.boundary, "symbol " + f.id);
  return f;
}

}  // namespace

SignaturePtr Signature::create(CategoryPtr base, std::vector<SymbolDecl> decls) {
  const auto& cat = *base;
  std::vector<PendingSymbol> pending;
  for (auto& d : decls) {
    SortId s = cat.sort_index(d.sort);
    if (!bases_compatible(d.arity.base(), cat))
      fail(ErrorKind::BaseMismatch, "arity of " + d.id + " lives over a different base");
    if (d.arity.max_cell_dim() > cat.dim(s))
      fail(ErrorKind::ArityDimensionViolation, "arity of " + d.id + " has cells above dimension " +
                                                   std::to_string(cat.dim(s)));
    d.arity = d.arity.rebase(base);
    pending.push_back({std::move(d), s});
  }
  std::sort(pending.begin(), pending.end(), [](const PendingSymbol& a, const PendingSymbol& b) {
    return std::tie(a.sort, a.decl.id) < std::tie(b.sort, b.decl.id);
  });
  for (std::size_t k = 1; k < pending.size(); ++k)
    if (pending[k].decl.id == pending[k - 1].decl.id)
      fail(ErrorKind::UnknownSymbol, "duplicate symbol " + pending[k].decl.id);

  SignaturePtr current = empty(base);
  std::size_t k = 0;
  while (k < pending.size()) {
    const int dim = cat.dim(pending[k].sort);
    std::vector<FunctionSymbol> layer;
    for (; k < pending.size() && cat.dim(pending[k].sort) == dim; ++k)
      layer.push_back(resolve_symbol(current, std::move(pending[k])));
    current = extend(current, std::move(layer));
  }
  return current;
}

SignaturePtr Signature::empty(CategoryPtr base) {
  std::shared_ptr<Signature> s(new Signature());
  s->base_ = std::move(base);
  s->index();
  return s;
}

SignaturePtr Signature::extend(const SignaturePtr& lower, std::vector<FunctionSymbol> symbols) {
  std::shared_ptr<Signature> s(new Signature(*lower));
  for (auto& f : symbols) {
    if (s->find_symbol(f.id)) fail(ErrorKind::UnknownSymbol, "duplicate symbol " + f.id);
    s->symbols_.push_back(std::move(f));
    s->by_id_.emplace(s->symbols_.back().id, s->num_symbols() - 1);
  }
  std::vector<int> order(s->symbols_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(s->symbols_[a].sort, s->symbols_[a].id) < std::tie(s->symbols_[b].sort, s->symbols_[b].id);
  });
  std::vector<int> new_index(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_index[order[k]] = static_cast<int>(k);
  std::vector<FunctionSymbol> sorted;
  for (int k : order) {
    FunctionSymbol f = std::move(s->symbols_[k]);
    // Boundary terms of new symbols also refer to indices of `lower`.
    for (auto& t : f.boundary) t = rename_symbols(t, new_index);
    sorted.push_back(std::move(f));
  }
  s->symbols_ = std::move(sorted);
  s->index();
  return s;
}

void Signature::index() {
  sort_begin_.assign(base_->num_sorts() + 1, 0);
  by_id_.clear();
  for (int f = 0; f < num_symbols(); ++f) {
    ++sort_begin_[symbols_[f].sort + 1];
    by_id_.emplace(symbols_[f].id, f);
  }
  for (std::size_t s = 1; s < sort_begin_.size(); ++s) sort_begin_[s] += sort_begin_[s - 1];
}

std::pair<int, int> Signature::symbols_of(SortId s) const { return {sort_begin_.at(s), sort_begin_.at(s + 1)}; }

std::optional<int> Signature::find_symbol(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

int Signature::symbol_index(const std::string& id) const {
  auto f = find_symbol(id);
  if (!f) fail(ErrorKind::UnknownSymbol, "unknown symbol " + id);
  return *f;
}

SignaturePtr Signature::restrict(int n) const {
  std::shared_ptr<Signature> s(new Signature());
  s->base_ = base_->truncate(n);
  for (const auto& f : symbols_) {
    if (base_->dim(f.sort) > n) continue;
    FunctionSymbol g = f;
    g.arity = f.arity.rebase(s->base_);
    s->symbols_.push_back(std::move(g));
  }
  s->index();
  return s;
}

}  // namespace cptd
