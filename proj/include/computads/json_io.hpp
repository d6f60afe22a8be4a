#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "computads/algebra.hpp"
#include "computads/computad.hpp"
#include "computads/plex.hpp"

namespace cptd::io {

using nlohmann::json;

enum class Kind { Category, Presheaf, Signature, Computad, Morphism, Algebra, Term, TermInContext, Polyplex };

std::string_view to_string(Kind k);

// An explicit "kind" member wins; otherwise the kind follows from the keys.
std::optional<Kind> detect_kind(const json& doc);

json to_json(const DirectCategory& cat);
// The category is omitted when it is implied by the surrounding document.
json to_json(const Presheaf& x, bool with_category = true);
json to_json(const Signature& sig);
json to_json(const Computad& c);
json to_json(const ComputadMorphism& m);
// Throws DepthExceeded for truncated free algebras, whose tables are partial.
json to_json(const Algebra& a);
json term_json(const Computad& c, const Term& t);
json raw_term_json(const RawTerm& t);
json polyplex_json(const Signature& sig, const Polyplex& p);
// Presheaf morphism as {"components": {source cell: target cell}}.
json presheaf_morphism_json(const Presheaf& x, const Presheaf& y, const PresheafMorphism& m);

// {"error": {"kind": ..., "message": ...}}
json error_json(const Error& e);

// Loads entities from JSON. A reference to another entity is either an inline
// object or a string naming a file, resolved against the directory of the
// document containing it. Files are loaded once and shared.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path base_dir = ".");

  // Parses a file (ParseError on failure) or, when `ref` starts with '{' or
  // '[', the text itself.
  json read(const std::string& ref);

  CategoryPtr category(const json& ref);
  Presheaf presheaf(const json& ref, const CategoryPtr& implied = nullptr);
  SignaturePtr signature(const json& ref);
  ComputadPtr computad(const json& ref);
  ComputadMorphism morphism(const json& ref);
  Algebra algebra(const json& ref);
  RawTerm raw_term(const json& ref);
  Term term(const json& ref, const Computad& context);
  // A term document {"computad": ref, "term": term}.
  std::pair<ComputadPtr, Term> term_in_context(const json& ref);
  Polyplex polyplex(const json& ref, const Signature& sig);
  PresheafMorphism presheaf_morphism(const json& ref, const Presheaf& x, const Presheaf& y);

  // Loads and validates a document of any kind.
  Kind check(const json& ref);

 private:
  struct Resolved {
    json doc;
    std::filesystem::path dir;
    std::string key;  // canonical path, empty for inline documents
  };
  Resolved resolve(const json& ref);
  Kind check_document(const json& doc);
  template <class F>
  auto within(const Resolved& r, F&& f);

  std::vector<std::filesystem::path> dirs_;
  std::map<std::string, json> files_;
  std::map<std::string, CategoryPtr> categories_;
  std::map<std::string, SignaturePtr> signatures_;
  std::map<std::string, ComputadPtr> computads_;
};

}  // namespace cptd::io
