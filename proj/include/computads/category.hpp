#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cptd {

using SortId = int;
using ArrowId = int;

struct SortDecl {
  std::string id;
  int dim = 0;
};

struct FaceDecl {
  std::string id;
  std::string src;
  std::string dst;
};

// `first` goes k -> j, `second` goes j -> i, `result` is their composite k -> i.
struct ComposeDecl {
  std::string first;
  std::string second;
  std::string result;
};

struct Arrow {
  std::string id;
  SortId src = 0;
  SortId dst = 0;
  bool identity = false;
};

class DirectCategory;
using CategoryPtr = std::shared_ptr<const DirectCategory>;

// A finite direct category given by full enumeration. Sorts are ordered by
// (dim, id) so that truncation to dimension <= n is a prefix; arrows are
// ordered by (dst, src, id) with the same property.
class DirectCategory {
 public:
  static CategoryPtr create(std::vector<SortDecl> sorts, std::vector<FaceDecl> faces,
                            std::vector<ComposeDecl> compose);

  int num_sorts() const { return static_cast<int>(sorts_.size()); }
  const SortDecl& sort(SortId s) const { return sorts_.at(s); }
  int dim(SortId s) const { return sorts_.at(s).dim; }
  std::optional<SortId> find_sort(const std::string& id) const;
  SortId sort_index(const std::string& id) const;
  int max_dim() const;
  // Number of sorts of dimension <= n.
  int sorts_up_to(int n) const;

  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  std::optional<ArrowId> find_arrow(const std::string& id) const;
  ArrowId arrow_index(const std::string& id) const;
  ArrowId identity(SortId s) const { return identity_.at(s); }

  // Non-identity arrows with codomain s.
  std::span<const ArrowId> into(SortId s) const { return into_.at(s); }
  // Position of a non-identity arrow inside into(dst).
  int face_position(ArrowId a) const { return face_pos_.at(a); }
  // All arrows src -> dst, identity included when src == dst.
  std::span<const ArrowId> hom(SortId src, SortId dst) const {
    return hom_.at(static_cast<std::size_t>(src) * sorts_.size() + dst);
  }
  // outer o inner, where inner: k -> j and outer: j -> i.
  ArrowId compose(ArrowId outer, ArrowId inner) const;
  // Per position of into(s): true when the face is not a composite of two
  // non-identity faces.
  std::vector<bool> generating_faces(SortId s) const;

  CategoryPtr truncate(int n) const;
  bool equals(const DirectCategory& other) const;
  // True when this category's sorts and arrows form a prefix of `other`.
  bool is_truncation_of(const DirectCategory& other) const;

  // Non-identity faces and the composition table among them, for export.
  std::vector<FaceDecl> face_decls() const;
  std::vector<ComposeDecl> compose_decls() const;

 private:
  DirectCategory() = default;

  std::vector<SortDecl> sorts_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> identity_;
  std::vector<std::vector<ArrowId>> into_;
  std::vector<int> face_pos_;
  std::vector<std::vector<ArrowId>> hom_;
  std::vector<ArrowId> compose_;  // arrows x arrows, -1 when not composable
  std::unordered_map<std::string, SortId> sort_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

bool same_base(const DirectCategory& a, const DirectCategory& b);

}  // namespace cptd
