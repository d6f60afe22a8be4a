#include "computads/json_io.hpp"

#include <fstream>
#include <sstream>

#include "computads/error.hpp"

namespace cptd::io {

namespace fs = std::filesystem;

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Category: return "category";
    case Kind::Presheaf: return "presheaf";
    case Kind::Signature: return "signature";
    case Kind::Computad: return "computad";
    case Kind::Morphism: return "morphism";
    case Kind::Algebra: return "algebra";
    case Kind::Term: return "term";
    case Kind::TermInContext: return "term-in-context";
    case Kind::Polyplex: return "polyplex";
  }
  return "unknown";
}

std::optional<Kind> detect_kind(const json& doc) {
  if (!doc.is_object()) return std::nullopt;
  if (doc.contains("kind") && doc["kind"].is_string()) {
    const std::string k = doc["kind"].get<std::string>();
    for (Kind c : {Kind::Category, Kind::Presheaf, Kind::Signature, Kind::Computad, Kind::Morphism, Kind::Algebra,
                   Kind::Term, Kind::TermInContext, Kind::Polyplex})
      if (to_string(c) == k) return c;
    return std::nullopt;
  }
  if (doc.contains("sorts")) return Kind::Category;
  if (doc.contains("symbols")) return Kind::Signature;
  if (doc.contains("interpretations")) return Kind::Algebra;
  if (doc.contains("generators")) return Kind::Computad;
  if (doc.contains("assign")) return Kind::Morphism;
  if (doc.contains("cells")) return Kind::Presheaf;
  if (doc.contains("polyplex")) return Kind::Polyplex;
  if (doc.contains("term") && doc.contains("computad")) return Kind::TermInContext;
  if (doc.contains("var") || doc.contains("app")) return Kind::Term;
  return std::nullopt;
}

namespace {

const json& need(const json& obj, const char* key) {
  if (!obj.is_object()) fail(ErrorKind::ParseError, std::string("expected an object holding \"") + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::ParseError, std::string("missing member \"") + key + "\"");
  return *it;
}

std::string str(const json& obj, const char* key) {
  const json& v = need(obj, key);
  if (!v.is_string()) fail(ErrorKind::ParseError, std::string("member \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& arr(const json& obj, const char* key) {
  static const json empty = json::array();
  if (!obj.contains(key)) return empty;
  const json& v = obj[key];
  if (!v.is_array()) fail(ErrorKind::ParseError, std::string("member \"") + key + "\" must be an array");
  return v;
}

std::vector<std::pair<std::string, std::vector<std::string>>> named_lists(const json& obj, const DirectCategory& cat,
                                                                           const char* what) {
  if (!obj.is_object()) fail(ErrorKind::ParseError, std::string(what) + " must be an object keyed by sort");
  for (const auto& [sort, _] : obj.items())
    if (!cat.find_sort(sort)) fail(ErrorKind::UnknownSort, "unknown sort " + sort + " in " + what);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    auto it = obj.find(cat.sort(s).id);
    if (it == obj.end()) continue;
    out.push_back({cat.sort(s).id, it->get<std::vector<std::string>>()});
  }
  return out;
}

json sorted_lists(const DirectCategory& cat, const std::function<const std::vector<std::string>&(SortId)>& names) {
  json out = json::object();
  for (SortId s = 0; s < cat.num_sorts(); ++s) out[cat.sort(s).id] = names(s);
  return out;
}

}  // namespace

json to_json(const DirectCategory& cat) {
  json sorts = json::array(), faces = json::array(), compose = json::array();
  for (SortId s = 0; s < cat.num_sorts(); ++s) sorts.push_back({{"id", cat.sort(s).id}, {"dim", cat.dim(s)}});
  for (const auto& f : cat.face_decls()) faces.push_back({{"id", f.id}, {"src", f.src}, {"dst", f.dst}});
  for (const auto& c : cat.compose_decls())
    compose.push_back({{"first", c.first}, {"second", c.second}, {"result", c.result}});
  return {{"sorts", sorts}, {"faces", faces}, {"compose", compose}};
}

json to_json(const Presheaf& x, bool with_category) {
  const auto& cat = x.base();
  json out;
  if (with_category) out["category"] = to_json(cat);
  out["cells"] = sorted_lists(cat, [&](SortId s) -> const std::vector<std::string>& { return x.cells(s); });
  json action = json::array();
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    const auto gen = cat.generating_faces(s);
    for (int c = 0; c < x.num_cells(s); ++c)
      for (ArrowId d : cat.into(s))
        if (gen[cat.face_position(d)])
          action.push_back(
              {{"face", cat.arrow(d).id}, {"from", x.cell_name(s, c)}, {"to", x.cell_name(cat.arrow(d).src, x.act(d, c))}});
  }
  out["action"] = action;
  return out;
}

json raw_term_json(const RawTerm& t) {
  if (t.is_var()) return {{"var", t.var}};
  json args = json::array();
  for (const auto& a : t.args) args.push_back({{"cell", a.cell}, {"term", raw_term_json(a.term)}});
  return {{"app", {{"symbol", t.symbol}, {"args", args}}}};
}

json term_json(const Computad& c, const Term& t) { return raw_term_json(to_raw(c, t)); }

json to_json(const Signature& sig) {
  const auto& cat = sig.base();
  json symbols = json::array();
  for (const auto& f : sig.symbols()) {
    auto ctx = Computad::free(f.arity, std::make_shared<const Signature>(sig));
    json boundary = json::array();
    const auto gen = cat.generating_faces(f.sort);
    for (ArrowId d : cat.into(f.sort))
      if (gen[cat.face_position(d)])
        boundary.push_back({{"face", cat.arrow(d).id}, {"term", term_json(*ctx, f.boundary[cat.face_position(d)])}});
    symbols.push_back(
        {{"id", f.id}, {"sort", cat.sort(f.sort).id}, {"arity", to_json(f.arity, false)}, {"boundary", boundary}});
  }
  return {{"category", to_json(cat)}, {"symbols", symbols}};
}

json to_json(const Computad& c) {
  const auto& cat = c.base();
  json gluing = json::array();
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    const auto gen = cat.generating_faces(s);
    for (int g = 0; g < c.num_generators(s); ++g)
      for (ArrowId d : cat.into(s))
        if (gen[cat.face_position(d)])
          gluing.push_back(
              {{"gen", c.generator_name(s, g)}, {"face", cat.arrow(d).id}, {"term", term_json(c, c.gluing(s, g, d))}});
  }
  return {{"signature", to_json(c.signature())},
          {"generators", sorted_lists(cat, [&](SortId s) -> const std::vector<std::string>& { return c.generators(s); })},
          {"gluing", gluing}};
}

json to_json(const ComputadMorphism& m) {
  json assign = json::array();
  for (SortId s = 0; s < m.src->base().num_sorts(); ++s)
    for (int g = 0; g < m.src->num_generators(s); ++g)
      assign.push_back({{"gen", m.src->generator_name(s, g)}, {"term", term_json(*m.dst, m(s, g))}});
  return {{"src", to_json(*m.src)}, {"dst", to_json(*m.dst)}, {"assign", assign}};
}

json to_json(const Algebra& a) {
  const auto& sig = a.signature();
  const auto& x = a.carrier();
  json interps = json::array();
  for (int f = 0; f < sig.num_symbols(); ++f) {
    const auto& sym = sig.symbol(f);
    json rows = json::array();
    for (const auto& in : a.inputs(f)) {
      json hom = json::object();
      for (int k = 0; k < static_cast<int>(in.size()); ++k) {
        CellRef r = sym.arity.unflat(k);
        hom[sym.arity.cell_name(r.sort, r.index)] = x.cell_name(r.sort, in[k]);
      }
      rows.push_back({{"hom", hom}, {"value", x.cell_name(sym.sort, a.interpret(f, in))}});
    }
    interps.push_back({{"symbol", sym.id}, {"rows", rows}});
  }
  return {{"signature", to_json(sig)}, {"carrier", to_json(x, false)}, {"interpretations", interps}};
}

json polyplex_json(const Signature& sig, const Polyplex& p) {
  const auto& cat = sig.base();
  if (p.is_var()) {
    json faces = json::array();
    for (ArrowId d : cat.into(p.sort()))
      faces.push_back({{"face", cat.arrow(d).id}, {"plex", polyplex_json(sig, p.children()[cat.face_position(d)])}});
    return {{"var", {{"sort", cat.sort(p.sort()).id}, {"faces", faces}}}};
  }
  const auto& f = sig.symbol(p.symbol());
  json args = json::array();
  for (int k = 0; k < f.arity.total_cells(); ++k) {
    CellRef r = f.arity.unflat(k);
    args.push_back({{"cell", f.arity.cell_name(r.sort, r.index)}, {"plex", polyplex_json(sig, p.children()[k])}});
  }
  return {{"app", {{"symbol", f.id}, {"args", args}}}};
}

json presheaf_morphism_json(const Presheaf& x, const Presheaf& y, const PresheafMorphism& m) {
  json comp = json::object();
  for (SortId s = 0; s < x.base().num_sorts(); ++s)
    for (int c = 0; c < x.num_cells(s); ++c) comp[x.cell_name(s, c)] = y.cell_name(s, m(s, c));
  return {{"components", comp}};
}

json error_json(const Error& e) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", msg}}}};
}

Workspace::Workspace(fs::path base_dir) { dirs_.push_back(std::move(base_dir)); }

json Workspace::read(const std::string& ref) {
  const auto first = ref.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (ref[first] == '{' || ref[first] == '[')) {
    try {
      return json::parse(ref);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("inline JSON: ") + e.what());
    }
  }
  return resolve(json(ref)).doc;
}

Workspace::Resolved Workspace::resolve(const json& ref) {
  if (ref.is_object()) return {ref, dirs_.back(), {}};
  if (!ref.is_string()) fail(ErrorKind::ParseError, "a reference must be an object or a file name");
  fs::path p = fs::path(ref.get<std::string>());
  if (p.is_relative()) p = dirs_.back() / p;
  std::error_code ec;
  fs::path canon = fs::weakly_canonical(p, ec);
  if (ec) canon = p;
  const std::string key = canon.string();
  auto it = files_.find(key);
  if (it == files_.end()) {
    std::ifstream in(canon);
    if (!in) fail(ErrorKind::ParseError, "cannot read " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      it = files_.emplace(key, json::parse(buf.str())).first;
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, p.string() + ": " + e.what());
    }
  }
  return {it->second, canon.parent_path(), key};
}

template <class F>
auto Workspace::within(const Resolved& r, F&& f) {
  struct Guard {
    std::vector<fs::path>& dirs;
    ~Guard() { dirs.pop_back(); }
  };
  dirs_.push_back(r.dir);
  Guard guard{dirs_};
  try {
    return f(r.doc);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

CategoryPtr Workspace::category(const json& ref) {
  Resolved r = resolve(ref);
  if (!r.key.empty())
    if (auto it = categories_.find(r.key); it != categories_.end()) return it->second;
  CategoryPtr out = within(r, [&](const json& doc) {
    std::vector<SortDecl> sorts;
    std::vector<FaceDecl> faces;
    std::vector<ComposeDecl> compose;
    for (const auto& s : need(doc, "sorts")) sorts.push_back({str(s, "id"), need(s, "dim").get<int>()});
    for (const auto& f : arr(doc, "faces")) faces.push_back({str(f, "id"), str(f, "src"), str(f, "dst")});
    for (const auto& c : arr(doc, "compose")) compose.push_back({str(c, "first"), str(c, "second"), str(c, "result")});
    return DirectCategory::create(std::move(sorts), std::move(faces), std::move(compose));
  });
  if (!r.key.empty()) categories_[r.key] = out;
  return out;
}

Presheaf Workspace::presheaf(const json& ref, const CategoryPtr& implied) {
  return within(resolve(ref), [&](const json& doc) {
    CategoryPtr base = implied;
    if (doc.contains("category")) {
      base = category(doc["category"]);
      if (implied && !base->equals(*implied)) fail(ErrorKind::BaseMismatch, "presheaf over an unexpected category");
    }
    if (!base) fail(ErrorKind::ParseError, "presheaf without a category");
    auto cells = named_lists(need(doc, "cells"), *base, "cells");
    std::vector<ActionDecl> action;
    for (const auto& a : arr(doc, "action")) action.push_back({str(a, "face"), str(a, "from"), str(a, "to")});
    return Presheaf::create(base, cells, action);
  });
}

SignaturePtr Workspace::signature(const json& ref) {
  Resolved r = resolve(ref);
  if (!r.key.empty())
    if (auto it = signatures_.find(r.key); it != signatures_.end()) return it->second;
  SignaturePtr out = within(r, [&](const json& doc) {
    CategoryPtr base = category(need(doc, "category"));
    std::vector<SymbolDecl> decls;
    for (const auto& s : arr(doc, "symbols")) {
      SymbolDecl d{str(s, "id"), str(s, "sort"), presheaf(need(s, "arity"), base), {}};
      for (const auto& b : arr(s, "boundary")) d.boundary.push_back({str(b, "face"), raw_term(need(b, "term"))});
      decls.push_back(std::move(d));
    }
    return Signature::create(base, std::move(decls));
  });
  if (!r.key.empty()) signatures_[r.key] = out;
  return out;
}

ComputadPtr Workspace::computad(const json& ref) {
  Resolved r = resolve(ref);
  if (!r.key.empty())
    if (auto it = computads_.find(r.key); it != computads_.end()) return it->second;
  ComputadPtr out = within(r, [&](const json& doc) {
    SignaturePtr sig = signature(need(doc, "signature"));
    auto gens = named_lists(need(doc, "generators"), sig->base(), "generators");
    std::vector<GluingDecl> gluing;
    for (const auto& g : arr(doc, "gluing")) gluing.push_back({str(g, "gen"), str(g, "face"), raw_term(need(g, "term"))});
    return Computad::create(sig, gens, gluing);
  });
  if (!r.key.empty()) computads_[r.key] = out;
  return out;
}

ComputadMorphism Workspace::morphism(const json& ref) {
  return within(resolve(ref), [&](const json& doc) {
    ComputadPtr src = computad(need(doc, "src"));
    ComputadPtr dst = computad(need(doc, "dst"));
    std::vector<std::pair<std::string, RawTerm>> assign;
    for (const auto& a : arr(doc, "assign")) assign.push_back({str(a, "gen"), raw_term(need(a, "term"))});
    return make_morphism(src, dst, assign);
  });
}

Algebra Workspace::algebra(const json& ref) {
  return within(resolve(ref), [&](const json& doc) {
    SignaturePtr sig = signature(need(doc, "signature"));
    Presheaf x = presheaf(need(doc, "carrier"), sig->base_ptr());
    std::vector<std::vector<TableRow>> tables(sig->num_symbols());
    std::vector<bool> seen(sig->num_symbols(), false);
    for (const auto& interp : arr(doc, "interpretations")) {
      const std::string id = str(interp, "symbol");
      auto f = sig->find_symbol(id);
      if (!f) fail(ErrorKind::UnknownSymbol, "no symbol " + id);
      if (seen[*f]) fail(ErrorKind::PartialTable, "two tables for " + id);
      seen[*f] = true;
      const auto& sym = sig->symbol(*f);
      for (const auto& row : arr(interp, "rows")) {
        const json& hom = need(row, "hom");
        TableRow t;
        for (int k = 0; k < sym.arity.total_cells(); ++k) {
          CellRef a = sym.arity.unflat(k);
          const std::string& name = sym.arity.cell_name(a.sort, a.index);
          if (!hom.contains(name)) fail(ErrorKind::PartialTable, "row of " + id + " misses arity cell " + name);
          CellRef c = x.cell(hom[name].get<std::string>());
          if (c.sort != a.sort) fail(ErrorKind::SortMismatch, "arity cell " + name + " sent to a cell of another sort");
          t.input.push_back(c.index);
        }
        CellRef v = x.cell(str(row, "value"));
        if (v.sort != sym.sort) fail(ErrorKind::SortMismatch, "value of " + id + " of the wrong sort");
        t.value = v.index;
        tables[*f].push_back(std::move(t));
      }
    }
    return Algebra::from_tables(sig, std::move(x), tables);
  });
}

RawTerm Workspace::raw_term(const json& ref) {
  return within(resolve(ref), [&](const json& doc) -> RawTerm {
    if (doc.contains("term") && !doc.contains("var") && !doc.contains("app")) return raw_term(doc["term"]);
    if (doc.contains("var")) return RawTerm::make_var(str(doc, "var"));
    const json& app = need(doc, "app");
    std::vector<RawArg> args;
    for (const auto& a : arr(app, "args")) args.push_back({str(a, "cell"), raw_term(need(a, "term"))});
    return RawTerm::make_app(str(app, "symbol"), std::move(args));
  });
}

Term Workspace::term(const json& ref, const Computad& context) { return resolve_term(context, raw_term(ref)); }

std::pair<ComputadPtr, Term> Workspace::term_in_context(const json& ref) {
  return within(resolve(ref), [&](const json& doc) {
    ComputadPtr c = computad(need(doc, "computad"));
    Term t = resolve_term(*c, raw_term(need(doc, "term")));
    return std::make_pair(c, t);
  });
}

Polyplex Workspace::polyplex(const json& ref, const Signature& sig) {
  const auto& cat = sig.base();
  std::function<Polyplex(const json&)> build = [&](const json& doc) -> Polyplex {
    if (doc.contains("var")) {
      const json& v = doc["var"];
      const std::string sort = str(v, "sort");
      auto s = cat.find_sort(sort);
      if (!s) fail(ErrorKind::UnknownSort, "no sort " + sort);
      std::vector<Polyplex> family(cat.into(*s).size());
      for (const auto& f : arr(v, "faces")) {
        const std::string face = str(f, "face");
        auto d = cat.find_arrow(face);
        if (!d || cat.arrow(*d).dst != *s || cat.arrow(*d).identity)
          fail(ErrorKind::UnknownFace, "no face " + face + " into " + sort);
        family[cat.face_position(*d)] = build(need(f, "plex"));
      }
      for (ArrowId d : cat.into(*s))
        if (!family[cat.face_position(d)].valid())
          fail(ErrorKind::ParseError, "polyplex of sort " + sort + " misses face " + cat.arrow(d).id);
      return Polyplex::var(*s, std::move(family));
    }
    const json& app = need(doc, "app");
    const std::string id = str(app, "symbol");
    auto f = sig.find_symbol(id);
    if (!f) fail(ErrorKind::UnknownSymbol, "no symbol " + id);
    const auto& sym = sig.symbol(*f);
    std::vector<Polyplex> args(sym.arity.total_cells());
    for (const auto& a : arr(app, "args")) {
      const std::string cell = str(a, "cell");
      auto c = sym.arity.find_cell(cell);
      if (!c) fail(ErrorKind::UnknownCell, "no arity cell " + cell + " of " + id);
      args[sym.arity.flat(*c)] = build(need(a, "plex"));
    }
    for (int k = 0; k < sym.arity.total_cells(); ++k)
      if (!args[k].valid()) fail(ErrorKind::ParseError, "polyplex application of " + id + " misses an argument");
    return Polyplex::app(sym.sort, *f, std::move(args));
  };
  Polyplex p = within(resolve(ref), [&](const json& doc) {
    return build(doc.contains("polyplex") ? doc["polyplex"] : doc);
  });
  check_polyplex(sig, p);
  return p;
}

PresheafMorphism Workspace::presheaf_morphism(const json& ref, const Presheaf& x, const Presheaf& y) {
  return within(resolve(ref), [&](const json& doc) {
    const json& comp = need(doc, "components");
    PresheafMorphism m;
    m.components.resize(x.base().num_sorts());
    for (SortId s = 0; s < x.base().num_sorts(); ++s)
      for (int c = 0; c < x.num_cells(s); ++c) {
        const std::string& name = x.cell_name(s, c);
        if (!comp.contains(name)) fail(ErrorKind::PartialTable, "no image for cell " + name);
        CellRef r = y.cell(comp[name].get<std::string>());
        if (r.sort != s) fail(ErrorKind::SortMismatch, "cell " + name + " sent to a cell of another sort");
        m.components[s].push_back(r.index);
      }
    if (!is_natural(x, y, m)) fail(ErrorKind::NotCompatible, "the map does not commute with the face actions");
    return m;
  });
}

Kind Workspace::check(const json& ref) {
  return within(resolve(ref), [&](const json& doc) { return check_document(doc); });
}

Kind Workspace::check_document(const json& doc) {
  auto kind = detect_kind(doc);
  if (!kind) fail(ErrorKind::ParseError, "cannot tell what kind of document this is");
  switch (*kind) {
    case Kind::Category: category(doc); break;
    case Kind::Presheaf: presheaf(doc); break;
    case Kind::Signature: signature(doc); break;
    case Kind::Computad: computad(doc); break;
    case Kind::Morphism: morphism(doc); break;
    case Kind::Algebra: algebra(doc); break;
    case Kind::Term: raw_term(doc); break;
    case Kind::TermInContext: term_in_context(doc); break;
    case Kind::Polyplex: {
      SignaturePtr sig = signature(need(doc, "signature"));
      polyplex(doc, *sig);
      break;
    }
  }
  return *kind;
}

}  // namespace cptd::io
