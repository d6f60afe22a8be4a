#include "computads/factorization.hpp"

#include <algorithm>
#include <unordered_set>

namespace cptd {

namespace {

class SupportCollector {
 public:
  explicit SupportCollector(const Computad& c) : c_(c), seen_(c.base().num_sorts()) {
    for (SortId s = 0; s < c.base().num_sorts(); ++s) seen_[s].assign(c.num_generators(s), false);
  }

  void add(const Term& t) {
    if (t.is_var()) {
      add_generator(t.sort(), t.generator());
      return;
    }
    if (!nodes_.insert(t.identity()).second) return;
    for (const auto& a : t.args()) add(a);
  }

  void add_generator(SortId s, int g) {
    if (seen_[s][g]) return;
    seen_[s][g] = true;
    for (const auto& t : c_.gluing_family(s, g)) add(t);
  }

  Support result() const {
    Support out(seen_.size());
    for (std::size_t s = 0; s < seen_.size(); ++s)
      for (std::size_t g = 0; g < seen_[s].size(); ++g)
        if (seen_[s][g]) out[s].push_back(static_cast<int>(g));
    return out;
  }

 private:
  const Computad& c_;
  std::vector<std::vector<bool>> seen_;
  std::unordered_set<const void*> nodes_;
};

}  // namespace

Support support(const Computad& c, const Term& t) {
  SupportCollector col(c);
  col.add(t);
  return col.result();
}

std::vector<int> support(const Computad& c, const Term& t, SortId s) { return support(c, t).at(s); }

Support support(const ComputadMorphism& m) {
  SupportCollector col(*m.dst);
  for (const auto& row : m.assign)
    for (const auto& t : row) col.add(t);
  return col.result();
}

bool is_full(const Computad& c, const Support& s) {
  for (SortId k = 0; k < c.base().num_sorts(); ++k)
    if (static_cast<int>(s.at(k).size()) != c.num_generators(k)) return false;
  return true;
}

Support support_union(Support a, const Support& b) {
  a.resize(std::max(a.size(), b.size()));
  for (std::size_t s = 0; s < b.size(); ++s) {
    std::vector<int> merged;
    std::set_union(a[s].begin(), a[s].end(), b[s].begin(), b[s].end(), std::back_inserter(merged));
    a[s] = std::move(merged);
  }
  return a;
}

std::optional<ComputadMorphism> lift_through_mono(const ComputadMorphism& rho, const ComputadMorphism& sigma) {
  if (!is_injective_var(rho)) fail(ErrorKind::NotMono, "lifting requires an injective variable-to-variable morphism");
  const Computad& e = *rho.dst;
  const auto map = var_map(rho);
  std::vector<std::vector<int>> inverse(e.base().num_sorts());
  for (SortId s = 0; s < e.base().num_sorts(); ++s) {
    inverse[s].assign(e.num_generators(s), -1);
    for (std::size_t g = 0; g < map[s].size(); ++g) inverse[s][map[s][g]] = static_cast<int>(g);
  }
  bool outside = false;
  ComputadMorphism lifted{sigma.src, rho.src, sigma.assign};
  for (auto& row : lifted.assign) {
    for (auto& t : row) {
      t = substitute(t, [&](SortId s, int g) {
        int w = inverse[s][g];
        if (w < 0) {
          outside = true;
          w = 0;
        }
        return Term::var(s, w);
      });
      if (outside) return std::nullopt;
    }
  }
  check_morphism(lifted);
  return lifted;
}

ImageFactorization image_factorize(const ComputadMorphism& sigma) {
  const Computad& d = *sigma.dst;
  const auto& cat = d.base();
  Support supp = support(sigma);
  std::vector<std::vector<int>> rename(cat.num_sorts());
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    rename[s].assign(d.num_generators(s), -1);
    for (int g : supp[s]) {
      rename[s][g] = static_cast<int>(names[s].size());
      names[s].push_back(d.generator_name(s, g));
    }
  }
  std::vector<std::vector<std::vector<Term>>> gluing(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g : supp[s]) {
      std::vector<Term> fam;
      for (const auto& t : d.gluing_family(s, g)) fam.push_back(rename_vars(t, rename));
      gluing[s].push_back(std::move(fam));
    }
  auto image = Computad::from_terms(d.signature_ptr(), names, std::move(gluing));
  auto mono = var_morphism(image, sigma.dst, supp);
  auto epi = lift_through_mono(mono, sigma);
  return ImageFactorization{std::move(*epi), std::move(mono)};
}

bool is_epi(const ComputadMorphism& sigma) { return is_full(*sigma.dst, support(sigma)); }

Splitting split_idempotent(const ComputadMorphism& e) {
  if (!e.src || !e.dst || e.src->total_generators() != e.dst->total_generators())
    fail(ErrorKind::NotIdempotent, "not an endomorphism");
  ComputadMorphism ee = compose(e, e);
  if (!(ee == e)) fail(ErrorKind::NotIdempotent, "e o e differs from e");
  auto f = image_factorize(e);
  auto id = compose(f.epi, f.mono);
  if (!(id == identity_morphism(f.mono.src))) fail(ErrorKind::NotIdempotent, "retraction o section is not the identity");
  return Splitting{std::move(f.epi), std::move(f.mono)};
}

}  // namespace cptd
