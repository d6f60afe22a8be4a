#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "computads/cofibrant.hpp"
#include "computads/colimit.hpp"
#include "computads/examples.hpp"
#include "computads/factorization.hpp"
#include "computads/json_io.hpp"
#include "computads/plex.hpp"
#include "computads/term_monad.hpp"

using namespace cptd;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Inline JSON text stays inline; anything else names a file.
json json_ref(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (s[first] == '{' || s[first] == '[')) {
    try {
      return json::parse(s);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("inline JSON: ") + e.what());
    }
  }
  return json(s);
}

std::pair<ComputadPtr, Term> load_term(io::Workspace& ws, const std::string& term, const std::string& computad) {
  if (!computad.empty()) {
    ComputadPtr c = ws.computad(json_ref(computad));
    return {c, ws.term(json_ref(term), *c)};
  }
  return ws.term_in_context(json_ref(term));
}

SortId sort_of(const DirectCategory& cat, const std::string& id) {
  auto s = cat.find_sort(id);
  if (!s) fail(ErrorKind::UnknownSort, "no sort " + id);
  return *s;
}

json support_json(const Computad& c, const Support& sup) {
  json out = json::object();
  for (SortId s = 0; s < c.base().num_sorts(); ++s) {
    json names = json::array();
    for (int g : sup[s]) names.push_back(c.generator_name(s, g));
    out[c.base().sort(s).id] = names;
  }
  return out;
}

json generator_lists(const Computad& c) {
  json out = json::object();
  for (SortId s = 0; s < c.base().num_sorts(); ++s) out[c.base().sort(s).id] = c.generators(s);
  return out;
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size() || out.back() < 0) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--counts", "expected non-negative integers separated by commas, got " + text);
    }
  }
  if (out.empty()) throw CLI::ValidationError("--counts", "at least one direction is needed");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computads over direct categories: validation and constructions on JSON entities"};
  app.require_subcommand(1);
  std::string file, term, computad, face, morphism, sort, sig, algebra, source, target, map, tree, counts;
  int depth = 0, max_depth = -1, dim = 1;

  auto* check = app.add_subcommand("check", "Load and validate a JSON document");
  check->add_option("file", file, "Document to check")->required();

  auto* boundary_cmd = app.add_subcommand("boundary", "Face of a term");
  boundary_cmd->add_option("--face", face, "Face id")->required();
  boundary_cmd->add_option("--term", term, "Term document or inline JSON")->required();
  boundary_cmd->add_option("--computad", computad, "Context computad, when the term document has none");

  auto* apply_cmd = app.add_subcommand("apply", "Apply a morphism to a term over its source");
  apply_cmd->add_option("--morphism", morphism, "Morphism document")->required();
  apply_cmd->add_option("--term", term, "Term over the source")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Terms of a sort up to a depth");
  enumerate->add_option("--computad", computad, "Computad document")->required();
  enumerate->add_option("--sort", sort, "Sort id")->required();
  enumerate->add_option("--depth", depth, "Depth bound")->required()->check(CLI::NonNegativeNumber);

  auto* classify_cmd = app.add_subcommand("classify", "Shape (polyplex) of a term");
  classify_cmd->add_option("--term", term, "Term document or inline JSON")->required();
  classify_cmd->add_option("--computad", computad, "Context computad, when the term document has none");

  auto* plexes = app.add_subcommand("plexes", "Polyplexes of a sort up to a depth");
  plexes->add_option("--sig", sig, "Signature document")->required();
  plexes->add_option("--sort", sort, "Sort id")->required();
  plexes->add_option("--max-depth", max_depth, "Depth bound")->required()->check(CLI::NonNegativeNumber);

  auto* nerve_cmd = app.add_subcommand("nerve", "Generator fibres over plexes");
  nerve_cmd->add_option("--computad", computad, "Computad document")->required();
  nerve_cmd->add_option("--max-depth", max_depth, "Plex depth bound (default: the least exact bound)");

  auto* support_cmd = app.add_subcommand("support", "Generators a morphism or a term depends on");
  support_cmd->add_option("--morphism", morphism, "Morphism document");
  support_cmd->add_option("--term", term, "Term document");
  support_cmd->add_option("--computad", computad, "Context computad for --term");

  auto* factorize = app.add_subcommand("factorize", "Image factorisation of a morphism");
  factorize->add_option("--morphism", morphism, "Morphism document")->required();

  auto* split = app.add_subcommand("split", "Split an idempotent endomorphism");
  split->add_option("--morphism", morphism, "Idempotent morphism document")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a term over the carrier in an algebra");
  eval->add_option("--algebra", algebra, "Algebra document")->required();
  eval->add_option("--term", term, "Term whose variables are carrier cells")->required();

  auto* filtration = app.add_subcommand("filtration", "Skeletal filtration and its replay");
  filtration->add_option("--computad", computad, "Computad document")->required();

  auto* cofrep = app.add_subcommand("cofrep", "Underlying computad and cofibrant replacement of an algebra");
  cofrep->add_option("--algebra", algebra, "Algebra document")->required();
  cofrep->add_option("--depth", depth, "Type depth bound")->required()->check(CLI::NonNegativeNumber);

  auto* tfib = app.add_subcommand("check-tfib", "Check the lifting property against boundary inclusions");
  tfib->add_option("--algebra", algebra, "Check the counit of this algebra");
  tfib->add_option("--depth", depth, "Type depth bound for --algebra")->check(CLI::NonNegativeNumber);
  tfib->add_option("--source", source, "Source presheaf");
  tfib->add_option("--target", target, "Target presheaf");
  tfib->add_option("--map", map, "Presheaf morphism {\"components\": {cell: cell}}");

  auto* example = app.add_subcommand("example", "Emit an example pack");
  example->require_subcommand(1);
  auto* ex_kan = example->add_subcommand("kan", "Kan signature up to a dimension");
  ex_kan->add_option("--dim", dim, "Dimension bound")->check(CLI::PositiveNumber);
  auto* ex_grid = example->add_subcommand("grid", "Positions of a grid");
  ex_grid->add_option("--counts", counts, "Counts per direction, e.g. 4,1")->required();
  auto* ex_group = example->add_subcommand("group", "Group signature");
  auto* ex_module = example->add_subcommand("module", "Module signature");
  auto* ex_cat = example->add_subcommand("cat", "Positions of a pasting tree");
  ex_cat->add_option("--tree", tree, "Tree in bracket notation, e.g. [[],[]]")->required();

  try {
    app.parse(argc, argv);
    if (support_cmd->parsed() && morphism.empty() == term.empty())
      throw CLI::ValidationError("--morphism/--term", "give exactly one of --morphism and --term");
    if (tfib->parsed() && algebra.empty() == (source.empty() && target.empty() && map.empty()))
      throw CLI::ValidationError("--algebra/--source", "give either --algebra or --source, --target and --map");
    if (tfib->parsed() && algebra.empty() && (source.empty() || target.empty() || map.empty()))
      throw CLI::ValidationError("--source/--target/--map", "all three are needed");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  std::vector<int> grid_counts;
  if (ex_grid->parsed()) {
    try {
      grid_counts = parse_counts(counts);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kUsage;
    }
  }

  io::Workspace ws;
  try {
    if (check->parsed()) {
      io::Kind k = ws.check(json_ref(file));
      emit({{"ok", true}, {"kind", std::string(io::to_string(k))}});
    } else if (boundary_cmd->parsed()) {
      auto [c, t] = load_term(ws, term, computad);
      auto d = c->base().find_arrow(face);
      if (!d || c->base().arrow(*d).dst != t.sort() || c->base().arrow(*d).identity)
        fail(ErrorKind::UnknownFace, "no face " + face + " into the sort of the term");
      emit(io::term_json(*c, boundary(*c, *d, t)));
    } else if (apply_cmd->parsed()) {
      ComputadMorphism m = ws.morphism(json_ref(morphism));
      Term t = ws.term(json_ref(term), *m.src);
      emit(io::term_json(*m.dst, apply(m, t)));
    } else if (enumerate->parsed()) {
      ComputadPtr c = ws.computad(json_ref(computad));
      auto ts = enumerate_terms(c, sort_of(c->base(), sort), depth);
      json list = json::array();
      for (const Term& t : ts) list.push_back({{"render", render(*c, t)}, {"term", io::term_json(*c, t)}});
      emit({{"sort", sort}, {"depth", depth}, {"count", ts.size()}, {"terms", list}});
    } else if (classify_cmd->parsed()) {
      auto [c, t] = load_term(ws, term, computad);
      Polyplex p = classify(*c, t);
      emit({{"render", render(c->signature(), p)}, {"depth", p.depth()}, {"polyplex", io::polyplex_json(c->signature(), p)}});
    } else if (plexes->parsed()) {
      SignaturePtr s = ws.signature(json_ref(sig));
      auto ps = enumerate_polyplexes(s, sort_of(s->base(), sort), max_depth);
      json list = json::array();
      for (const auto& p : ps) list.push_back({{"render", render(*s, p)}, {"polyplex", io::polyplex_json(*s, p)}});
      emit({{"sort", sort}, {"max_depth", max_depth}, {"count", ps.size()}, {"polyplexes", list}});
    } else if (nerve_cmd->parsed()) {
      ComputadPtr c = ws.computad(json_ref(computad));
      Nerve n = nerve(c, max_depth);
      json list = json::array();
      for (std::size_t k = 0; k < n.plexes.size(); ++k)
        list.push_back({{"render", render(*n.sig, n.plexes[k])}, {"fibre", n.fibres[k]}});
      emit({{"plexes", list}, {"elements", n.elements.size()}, {"reconstructs", isomorphic(reconstruct_from_nerve(n), c)}});
    } else if (support_cmd->parsed()) {
      if (!morphism.empty()) {
        ComputadMorphism m = ws.morphism(json_ref(morphism));
        Support sup = support(m);
        emit({{"support", support_json(*m.dst, sup)}, {"full", is_full(*m.dst, sup)}});
      } else {
        auto [c, t] = load_term(ws, term, computad);
        Support sup = support(*c, t);
        emit({{"support", support_json(*c, sup)}, {"full", is_full(*c, sup)}});
      }
    } else if (factorize->parsed()) {
      ComputadMorphism m = ws.morphism(json_ref(morphism));
      auto f = image_factorize(m);
      emit({{"image", io::to_json(*f.epi.dst)}, {"epi", io::to_json(f.epi)}, {"mono", io::to_json(f.mono)}});
    } else if (split->parsed()) {
      ComputadMorphism m = ws.morphism(json_ref(morphism));
      auto sp = split_idempotent(m);
      emit({{"object", io::to_json(*sp.retraction.dst)},
            {"retraction", io::to_json(sp.retraction)},
            {"section", io::to_json(sp.section)}});
    } else if (eval->parsed()) {
      Algebra a = ws.algebra(json_ref(algebra));
      Term t = ws.term(json_ref(term), *a.carrier_computad());
      emit({{"sort", a.carrier().base().sort(t.sort()).id}, {"value", a.carrier().cell_name(t.sort(), eval_term(a, t))}});
    } else if (filtration->parsed()) {
      ComputadPtr c = ws.computad(json_ref(computad));
      auto f = skeletal_filtration(c);
      const auto& cat = c->base();
      json stages = json::array();
      for (const auto& st : f.stages) {
        json added = json::array();
        for (std::size_t k = 0; k < st.added.size(); ++k) {
          const GenRef g = st.added[k];
          json faces = json::object();
          for (ArrowId d : cat.into(g.sort)) faces[cat.arrow(d).id] = render(*c, c->gluing(g.sort, g.index, d));
          added.push_back({{"gen", c->generator_name(g)}, {"sort", cat.sort(g.sort).id}, {"boundary", faces}});
        }
        stages.push_back({{"dim", st.dim}, {"generators", st.computad->total_generators()}, {"attached", added}});
      }
      emit({{"stages", stages}, {"replay_isomorphic", isomorphic(replay(f), c)}});
    } else if (cofrep->parsed()) {
      Algebra a = ws.algebra(json_ref(algebra));
      auto cr = counit_r(a, depth);
      const bool tf = !check_trivial_fibration(cr.cof.carrier(), a.carrier(), cr.r);
      emit({{"depth", depth},
            {"exact", cr.und.exact},
            {"generators", generator_lists(*cr.und.computad)},
            {"underlying", io::to_json(*cr.und.computad)},
            {"counit_trivial_fibration", tf}});
    } else if (tfib->parsed()) {
      std::optional<TfibCounterexample> bad;
      Presheaf x, y;
      if (!algebra.empty()) {
        Algebra a = ws.algebra(json_ref(algebra));
        auto cr = counit_r(a, depth);
        x = cr.cof.carrier();
        y = a.carrier();
        bad = check_trivial_fibration(x, y, cr.r);
      } else {
        x = ws.presheaf(json_ref(source));
        y = ws.presheaf(json_ref(target), x.base_ptr());
        bad = check_trivial_fibration(x, y, ws.presheaf_morphism(json_ref(map), x, y));
      }
      json out{{"trivial_fibration", !bad.has_value()}};
      if (bad) {
        const auto& cat = x.base();
        Presheaf bd = boundary_representable(x.base_ptr(), bad->sort);
        json family = json::object();
        for (int k = 0; k < static_cast<int>(bad->boundary.size()); ++k) {
          CellRef r = bd.unflat(k);
          family[bd.cell_name(r.sort, r.index)] = x.cell_name(r.sort, bad->boundary[k]);
        }
        out["counterexample"] = {{"sort", cat.sort(bad->sort).id},
                                 {"target", y.cell_name(bad->sort, bad->target)},
                                 {"boundary", family}};
      }
      emit(out);
      return bad ? kInvalid : kOk;
    } else if (ex_kan->parsed()) {
      emit(io::to_json(*examples::sigma_kan(dim)));
    } else if (ex_group->parsed()) {
      emit(io::to_json(*examples::group_signature()));
    } else if (ex_module->parsed()) {
      emit(io::to_json(*examples::module_signature()));
    } else if (ex_grid->parsed()) {
      examples::Grid g;
      for (int k = 0; k < static_cast<int>(grid_counts.size()); ++k) g.directions.push_back(k);
      g.counts = grid_counts;
      auto cube = examples::cube_category(static_cast<int>(grid_counts.size()) - 1);
      emit(io::to_json(examples::grid_positions(g, cube)));
    } else if (ex_cat->parsed()) {
      examples::BatTree t = examples::parse_tree(tree);
      auto globes = examples::globe_category(std::max(examples::tree_dim(t), 0));
      emit(io::to_json(examples::tree_positions(t, globes)));
    }
  } catch (const Error& e) {
    emit(io::error_json(e));
    return kInvalid;
  }
  return kOk;
}
