#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folspace/errors.hpp"
#include "folspace/geometry.hpp"
#include "folspace/io.hpp"
#include "folspace/prover.hpp"
#include "folspace/uncertainty.hpp"
#include "folspace/vectorspace.hpp"

using namespace folspace;

namespace {

struct GlobalOpts {
  std::string vocab_path;
  uint64_t budget = uint64_t(1) << 20;
  bool json = false;
  uint64_t seed = 0;
  int threads = 1;
  std::string scheme = "indicator";
};

CoefficientScheme parse_scheme(const std::string& s) {
  if (s == "indicator") return CoefficientScheme::Indicator;
  if (s == "uniform") return CoefficientScheme::UniformOverDnf;
  if (s == "cardinality") return CoefficientScheme::Cardinality;
  throw error("unknown coefficient scheme: " + s);
}

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Universe make_universe(const GlobalOpts& g) {
  if (g.vocab_path.empty()) throw usage_error("--vocab is required");
  UniverseOptions opts;
  opts.enumeration_budget = g.budget;
  opts.threads = g.threads;
  return Universe(load_vocabulary(g.vocab_path), opts);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const GlobalOpts& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ------------------------------------------------------------ constituents

int cmd_constituents_enum(const GlobalOpts& g, int rank, int context) {
  Universe u = make_universe(g);
  auto list = u.enumerate_constituents(rank, context);
  Json arr = Json::array();
  std::string text;
  for (size_t i = 0; i < list.size(); ++i) {
    arr.push_back(constituent_to_json(u, list[i]));
    std::string id =
        context == 0 && rank >= 1 ? u.constituent_id(rank, static_cast<uint32_t>(i)) : "-";
    text += std::to_string(i) + "\t" + id + "\t" +
            print_formula(u.to_formula(list[i]), u.vocab()) + "\n";
  }
  emit(g, Json{{"rank", rank}, {"context", context}, {"count", list.size()}, {"constituents", arr}},
       "count " + std::to_string(list.size()) + "\n" + text);
  return 0;
}

int cmd_constituents_dnf(const GlobalOpts& g, int rank, const std::string& formula) {
  Universe u = make_universe(g);
  FormulaPtr f = parse_sentence(formula, u.vocab());
  ConstituentSet s = u.dnf(f, rank);
  std::string text = "count " + std::to_string(s.size()) + "\n";
  for (uint32_t idx : s.members)
    text += u.constituent_id(rank, idx) + "\t" +
            print_formula(u.to_formula(u.constituent_at(rank, idx)), u.vocab()) + "\n";
  emit(g, constituent_set_to_json(u, s), text);
  return 0;
}

int cmd_constituents_count(const GlobalOpts& g, int rank, int context) {
  Universe u = make_universe(g);
  std::string gamma = u.gamma_count(rank, context).to_string();
  std::string delta = u.delta_count(rank, context).to_string();
  emit(g, Json{{"rank", rank}, {"context", context}, {"attributive", gamma}, {"constituents", delta}},
       "attributive " + gamma + "\nconstituents " + delta + "\n");
  return 0;
}

// ------------------------------------------------------------ vectors

int cmd_vec_embed(const GlobalOpts& g, int rank, const std::string& formula) {
  Universe u = make_universe(g);
  SparseVector v = embed(u, parse_sentence(formula, u.vocab()), rank, parse_scheme(g.scheme));
  std::string text;
  for (const auto& [idx, c] : v.entries())
    text += u.constituent_id(rank, idx) + "\t" + c.to_string() + "\n";
  emit(g, vector_to_json(v), text.empty() ? "zero vector\n" : text);
  return 0;
}

int cmd_vec_inner(const GlobalOpts& g, int rank, const std::string& fa, const std::string& fb) {
  Universe u = make_universe(g);
  CoefficientScheme sch = parse_scheme(g.scheme);
  BigRat r = inner(embed(u, parse_sentence(fa, u.vocab()), rank, sch),
                   embed(u, parse_sentence(fb, u.vocab()), rank, sch));
  emit(g, Json{{"inner", r.to_string()}}, r.to_string() + "\n");
  return 0;
}

int cmd_vec_mp(const GlobalOpts& g, int rank, const std::string& state, const std::string& ante,
               const std::string& cons) {
  Universe u = make_universe(g);
  CoefficientScheme sch = parse_scheme(g.scheme);
  SparseVector sv = embed(u, parse_sentence(state, u.vocab()), rank, sch);
  SparseVector out = mp_apply(u, parse_sentence(ante, u.vocab()),
                              parse_sentence(cons, u.vocab()), sv, rank, sch);
  std::string text;
  for (const auto& [idx, c] : out.entries())
    text += u.constituent_id(rank, idx) + "\t" + c.to_string() + "\n";
  emit(g, vector_to_json(out), text.empty() ? "zero vector\n" : text);
  return 0;
}

int cmd_vec_plaus(const GlobalOpts& g, int rank, const std::string& formula) {
  Universe u = make_universe(g);
  BigRat p = plausibility(embed(u, parse_sentence(formula, u.vocab()), rank, parse_scheme(g.scheme)));
  emit(g, Json{{"plausibility", p.to_string()}}, p.to_string() + "\n");
  return 0;
}

int cmd_vec_entropy(const GlobalOpts& g, int rank, const std::string& alpha,
                    const std::string& formula) {
  Universe u = make_universe(g);
  SparseVector d = dagger_vector(u, parse_sentence(formula, u.vocab()), rank, BigRat::parse(alpha));
  double e = unnorm_entropy(d);
  emit(g, Json{{"alpha", alpha}, {"entropy", e}}, fmt_double(e) + "\n");
  return 0;
}

// ------------------------------------------------------------ models

int cmd_model_check(const GlobalOpts& g, const std::string& model_path,
                    const std::string& formula) {
  Universe u = make_universe(g);
  FiniteModel m = load_model(model_path, u.vocab());
  bool holds = check(m, parse_sentence(formula, u.vocab()));
  emit(g, Json{{"holds", holds}}, std::string(holds ? "true" : "false") + "\n");
  return 0;
}

int cmd_model_classify(const GlobalOpts& g, const std::string& model_path, int rank) {
  Universe u = make_universe(g);
  FiniteModel m = load_model(model_path, u.vocab());
  Constituent d = u.satisfying_constituent(m, rank);
  emit(g, constituent_to_json(u, d), print_formula(u.to_formula(d), u.vocab()) + "\n");
  return 0;
}

int cmd_model_enum(const GlobalOpts& g, int max_size, bool iso) {
  Universe u = make_universe(g);
  auto models = enumerate_models(u.vocab(), max_size, iso);
  Json arr = Json::array();
  std::string text = "count " + std::to_string(models.size()) + "\n";
  for (const auto& m : models) arr.push_back(model_to_json(m));
  emit(g, Json{{"count", models.size()}, {"models", arr}}, text);
  return 0;
}

// ------------------------------------------------------------ tree

int cmd_tree_build(const GlobalOpts& g, int depth, const std::string& measure) {
  Universe u = make_universe(g);
  RefinementTree t = build_tree(u, depth);
  std::optional<TreeMeasure> m;
  if (measure == "uniform") m = uniform_measure(t);
  else if (!measure.empty()) throw error("unknown measure: " + measure);
  std::string text;
  for (int r = 0; r <= t.max_rank; ++r)
    for (uint32_t i = 0; i < t.level_size(r); ++i) {
      text += u.constituent_id(r, i) + "\t" + std::to_string(r) + "\t" +
              (r == 0 ? "-" : u.constituent_id(r - 1, t.parent[r][i]));
      if (m) text += "\t" + m->at(r, i).to_string() +
                     "\t" + literal_uniform_value(u, r).to_string();
      text += "\n";
    }
  emit(g, tree_to_json(t, m ? &*m : nullptr), text);
  return 0;
}

// ------------------------------------------------------------ prove

int cmd_prove_refute(const GlobalOpts& g, int rank, int depth, const std::string& formula) {
  Universe u = make_universe(g);
  RefutationResult r = refute(u, parse_sentence(formula, u.vocab()), rank, depth);
  Json branches = Json::array();
  std::string text = std::string("refuted ") + (r.refuted ? "true" : "false") + "\n";
  text += "dnf-size " + std::to_string(r.dnf_size) + "\n";
  text += "depth-used " + std::to_string(r.depth_used) + "\n";
  for (const auto& b : r.certificate) {
    branches.push_back(Json{{"id", u.constituent_id(b.rank, b.index)},
                            {"refuted", b.refuted},
                            {"depth", b.resolved_depth},
                            {"rule", ti_rule_name(b.rule)},
                            {"expansions", b.expansions_examined}});
    text += u.constituent_id(b.rank, b.index) + "\t" + (b.refuted ? "closed" : "open") + "\t" +
            ti_rule_name(b.rule) + "\tdepth " + std::to_string(b.resolved_depth) + "\n";
  }
  if (!r.diagnostic.empty()) text += "diagnostic: " + r.diagnostic + "\n";
  emit(g,
       Json{{"refuted", r.refuted},
            {"dnf_size", r.dnf_size},
            {"depth_used", r.depth_used},
            {"budget_hit", r.budget_hit},
            {"diagnostic", r.diagnostic},
            {"branches", branches}},
       text);
  return r.budget_hit && !r.refuted ? 1 : 0;
}

int cmd_prove_sandwich(const GlobalOpts& g, int rank, int depth, const std::string& models_dir,
                       const std::string& formula) {
  Universe u = make_universe(g);
  std::vector<FiniteModel> models =
      models_dir.empty() ? std::vector<FiniteModel>{} : load_model_dir(models_dir, u.vocab());
  SandwichProof p = sandwich(u, parse_sentence(formula, u.vocab()), rank, depth, models);
  Json comps = Json::array();
  std::string text;
  for (size_t i = 0; i < p.components.size(); ++i) {
    const auto& c = p.components[i];
    std::string status = c.status == ComponentStatus::KnownOne    ? "known-one"
                         : c.status == ComponentStatus::KnownZero ? "known-zero"
                                                                  : "unknown";
    std::string witness = c.status == ComponentStatus::KnownOne
                              ? "model#" + std::to_string(c.model_witness)
                          : c.status == ComponentStatus::KnownZero
                              ? (c.zero_reason == ZeroReason::Refuted ? "refutation"
                                                                      : "not-in-dnf")
                              : "-";
    comps.push_back(Json{{"id", u.constituent_id(rank, static_cast<uint32_t>(i))},
                         {"status", status},
                         {"witness", witness}});
    text += u.constituent_id(rank, static_cast<uint32_t>(i)) + "\t" + status + "\t" + witness + "\n";
  }
  text += "known-one " + std::to_string(p.known_one) + "\nknown-zero " +
          std::to_string(p.known_zero) + "\nunknown " + std::to_string(p.unknown) + "\n";
  emit(g,
       Json{{"rank", rank},
            {"known_one", p.known_one},
            {"known_zero", p.known_zero},
            {"unknown", p.unknown},
            {"components", comps}},
       text);
  return p.unknown == 0 ? 0 : 1;
}

// ------------------------------------------------------------ knowledge

struct KnowledgeInputs {
  std::vector<FormulaPtr> false_sentences;
  std::vector<FormulaPtr> conjectures;
  std::vector<FiniteModel> models;
  BigRat alpha;
};

KnowledgeInputs load_inputs(const Universe& u, const std::string& path) {
  KnowledgeSpec spec = load_knowledge_spec(path);
  KnowledgeInputs in;
  for (const auto& s : spec.false_sentences)
    in.false_sentences.push_back(parse_sentence(s, u.vocab()));
  for (const auto& s : spec.conjectures) in.conjectures.push_back(parse_sentence(s, u.vocab()));
  for (const auto& p : spec.model_paths) in.models.push_back(load_model(p, u.vocab()));
  in.alpha = spec.alpha;
  return in;
}

Json matrix_json(const Universe& u, const KnowledgeMatrix& k) {
  Json rows = Json::array();
  for (const auto& row : k.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(r);
  }
  Json sentences = Json::array();
  for (const auto& s : k.sentences) sentences.push_back(print_formula(s, u.vocab()));
  return Json{{"sentences", sentences}, {"alpha", k.alpha.to_string()}, {"matrix", rows}};
}

std::string matrix_text(const KnowledgeMatrix& k) {
  std::string text;
  size_t n = k.sentences.size();
  text += "      ";
  for (size_t j = 0; j < n; ++j) text += "phi" + std::to_string(j) + "\t";
  text += "\n";
  for (size_t i = 0; i < n; ++i) {
    text += "phi" + std::to_string(i) + "  ";
    for (size_t j = 0; j < n; ++j) text += k.entries[i][j].to_string() + "\t";
    text += "\n";
  }
  return text;
}

int cmd_know(const GlobalOpts& g, const std::string& mode, const std::string& path, int rank,
             int refute_depth, int tree_depth, bool literal, bool no_refuter) {
  Universe u = make_universe(g);
  KnowledgeInputs in = load_inputs(u, path);
  RefuterConfig ref;
  ref.enabled = !no_refuter;
  ref.depth = refute_depth;
  ref.literal_reading = literal;
  if (mode == "measure") {
    RefinementTree t = build_tree(u, tree_depth);
    auto nb = agent_node_beliefs(t, in.models, in.alpha, ref);
    TreeMeasure nu = belief_measure(t, nb);
    std::string text;
    Json nodes = Json::array();
    for (int r = 0; r <= t.max_rank; ++r)
      for (uint32_t i = 0; i < t.level_size(r); ++i) {
        nodes.push_back(Json{{"id", u.constituent_id(r, i)},
                             {"rank", r},
                             {"parent", r == 0 ? "-" : u.constituent_id(r - 1, t.parent[r][i])},
                             {"belief", nb[r][i].to_string()},
                             {"measure", nu.at(r, i).to_string()}});
        text += u.constituent_id(r, i) + "\t" + std::to_string(r) + "\t" +
                (r == 0 ? "-" : u.constituent_id(r - 1, t.parent[r][i])) + "\t" +
                nu.at(r, i).to_string() + "\n";
      }
    emit(g, Json{{"depth", tree_depth}, {"nodes", nodes}}, text);
    return 0;
  }
  KnowledgeMatrix k =
      build_knowledge(u, in.false_sentences, in.conjectures, in.models, in.alpha, ref, rank);
  if (mode == "build") {
    emit(g, matrix_json(u, k), matrix_text(k));
    return 0;
  }
  if (mode == "beliefs") {
    auto b = beliefs(k);
    Json arr = Json::array();
    std::string text;
    for (size_t i = 0; i < b.size(); ++i) {
      arr.push_back(Json{{"sentence", print_formula(k.sentences[i], u.vocab())},
                         {"belief", b[i].to_string()}});
      text += "phi" + std::to_string(i) + "\t" + b[i].to_string() + "\t" +
              print_formula(k.sentences[i], u.vocab()) + "\n";
    }
    emit(g, Json{{"beliefs", arr}}, text);
    return 0;
  }
  if (mode == "rank") {
    auto scores = rank_conjectures(k);
    ConjecturingBasisReport rep = conjecturing_basis_report(k, rank);
    Json arr = Json::array();
    std::string text = "exploitation order (descending score):\n";
    for (const auto& s : scores) {
      arr.push_back(Json{{"sentence_index", s.sentence_index}, {"score", s.score}});
      text += "phi" + std::to_string(s.sentence_index) + "\t" + fmt_double(s.score) + "\t" +
              print_formula(k.sentences[s.sentence_index], u.vocab()) + "\n";
    }
    text += "gram-rank " + std::to_string(rep.gram_rank) + "/" +
            std::to_string(rep.sentence_count) + "\n";
    text += std::string("contains-top ") + (rep.contains_top ? "true" : "false") + "\n";
    emit(g,
         Json{{"ranking", arr},
              {"gram_rank", rep.gram_rank},
              {"sentence_count", rep.sentence_count},
              {"independent", rep.independent},
              {"contains_top", rep.contains_top}},
         text);
    return 0;
  }
  throw error("unknown knowledge mode: " + mode);
}

// ------------------------------------------------------------ cube & span

int cmd_cube_stats(const GlobalOpts& g, int rank, const std::string& theory_path,
                   int refute_depth) {
  Universe u = make_universe(g);
  std::vector<FormulaPtr> axioms;
  if (!theory_path.empty())
    for (const auto& line : load_sentence_lines(theory_path))
      axioms.push_back(parse_sentence(line, u.vocab()));
  FormulaPtr theory = Formula::conj(axioms);

  // Resolve satisfiability-with-the-theory per constituent: exactly for
  // monadic vocabularies, refuter-verified partial labels otherwise
  // (unknowns stay unlabeled and block the cube statistics).
  const auto& table = u.delta_table(rank);
  std::vector<int> status(table.size(), 0);  // -1 sat, +1 unsat, 0 unknown
  size_t sat = 0, unsat = 0;
  int theory_rank = std::max(rank, quantifier_rank(theory));
  std::optional<ConstituentSet> support;
  if (theory_rank == rank) support = u.dnf(theory, rank);
  for (uint32_t i = 0; i < table.size(); ++i) {
    Constituent d = u.constituent_at(rank, i);
    FormulaPtr df = u.to_formula(d);
    if (support && !support->contains(i)) {
      status[i] = 1;  // excluded by the theory
    } else if (u.trivially_inconsistent(d)) {
      status[i] = 1;
    } else if (u.vocab().monadic()) {
      FormulaPtr both = support ? df : Formula::land(df, theory);
      status[i] =
          has_model(u.vocab(), both, monadic_model_bound(u.vocab(), theory_rank)) ? -1 : 1;
    } else if (refute(u, support ? df : Formula::land(df, theory), theory_rank, refute_depth)
                   .refuted) {
      status[i] = 1;
    } else if (has_model(u.vocab(), support ? df : Formula::land(df, theory), 3)) {
      status[i] = -1;
    }
    if (status[i] < 0) ++sat;
    if (status[i] > 0) ++unsat;
  }
  size_t unknown = table.size() - sat - unsat;

  Json out{{"rank", rank},
           {"space", table.size()},
           {"satisfiable", sat},
           {"unsatisfiable", unsat},
           {"unknown", unknown}};
  std::string text = "space " + std::to_string(table.size()) + "\nsatisfiable " +
                     std::to_string(sat) + "\nunsatisfiable " + std::to_string(unsat) +
                     "\nunknown " + std::to_string(unknown) + "\n";
  if (unknown == 0) {
    Hypercube cube = constituent_cube(
        u, rank, [&](uint32_t idx) -> int8_t { return status[idx] < 0 ? -1 : 1; });
    PoincareReport pr = check_poincare(cube, g.threads);
    Json infl = Json::array();
    text += "influence:";
    for (int i = 0; i < cube.dimension; ++i) {
      BigRat v = influence(cube, i, g.threads);
      infl.push_back(v.to_string());
      text += " " + v.to_string();
    }
    text += "\n";
    out["influence"] = infl;
    out["total_influence"] = pr.total_influence.to_string();
    out["variance"] = pr.variance.to_string();
    out["max_coordinate_influence"] = pr.max_coordinate_influence.to_string();
    out["poincare_holds"] = pr.holds;
    out["variance_closed_form"] =
        variance_of_valuation(sat, table.size()).to_string();
    text += "total-influence " + pr.total_influence.to_string() + "\n";
    text += "variance " + pr.variance.to_string() + "\n";
    text += "max-coordinate-influence " + pr.max_coordinate_influence.to_string() + "\n";
    text += std::string("poincare ") + (pr.holds ? "holds" : "violated") + "\n";
  } else {
    text += "cube statistics skipped: unresolved labels\n";
  }
  emit(g, out, text);
  return unknown == 0 ? 0 : 1;
}

int cmd_span_greedy(const GlobalOpts& g, int rank, int k, const std::string& target) {
  Universe u = make_universe(g);
  std::vector<uint32_t> coords;
  SparseVector t(&u, rank);
  if (target == "uninformed") {
    for (uint32_t i = 0; i < u.delta_table(rank).size(); ++i) coords.push_back(i);
    t = truth_representation(u, rank, TruthKind::Uninformed);
  } else if (target == "omniscient") {
    if (!u.vocab().monadic()) throw error("omniscient target needs the exact oracle");
    int bound = monadic_model_bound(u.vocab(), rank);
    for (uint32_t i = 0; i < u.delta_table(rank).size(); ++i)
      if (has_model(u.vocab(), u.to_formula(u.constituent_at(rank, i)), bound))
        coords.push_back(i);
    t = truth_representation(u, rank, TruthKind::Omniscient, coords);
  } else {
    throw error("unknown target: " + target);
  }
  BigRat height(1, static_cast<int64_t>(coords.size()));
  SpanResult r = approx_span(t, coords, height, k);
  Json steps = Json::array();
  std::string text;
  for (size_t s = 0; s < r.subsets.size(); ++s) {
    Json ids = Json::array();
    std::string line = "step " + std::to_string(s + 1) + ":";
    for (uint32_t idx : r.subsets[s]) {
      ids.push_back(u.constituent_id(rank, idx));
      line += " " + u.constituent_id(rank, idx);
    }
    steps.push_back(ids);
    text += line + "\n";
  }
  text += "error^2 " + r.error_sq.to_string() + " (sqrt " + fmt_double(r.error) + ")\n";
  if (r.bound_defined)
    text += "bound^2 " + r.bound_sq.to_string() + " (sqrt " + fmt_double(r.bound) + ") " +
            (r.within_bound ? "ok" : "exceeded") + "\n";
  else
    text += "bound undefined for k=0\n";
  emit(g,
       Json{{"target", target},
            {"k", k},
            {"steps", steps},
            {"error_sq", r.error_sq.to_string()},
            {"error", r.error},
            {"bound_defined", r.bound_defined},
            {"bound_sq", r.bound_defined ? r.bound_sq.to_string() : "-"},
            {"within_bound", r.within_bound}},
       text);
  return r.bound_defined && !r.within_bound ? 1 : 0;
}

int cmd_span_model_report(const GlobalOpts& g, int rank, const std::string& models_dir,
                          const std::string& formula) {
  Universe u = make_universe(g);
  std::vector<FiniteModel> models =
      models_dir.empty() ? std::vector<FiniteModel>{} : load_model_dir(models_dir, u.vocab());
  std::vector<uint32_t> sat;
  if (u.vocab().monadic()) {
    int bound = monadic_model_bound(u.vocab(), rank);
    for (uint32_t i = 0; i < u.delta_table(rank).size(); ++i)
      if (has_model(u.vocab(), u.to_formula(u.constituent_at(rank, i)), bound)) sat.push_back(i);
  }
  ModelSpanReport r =
      model_span_report(u, parse_sentence(formula, u.vocab()), rank, models, sat);
  std::string text;
  text += "models " + std::to_string(r.model_count) + "\n";
  text += "support " + std::to_string(r.support_size) + " of " + std::to_string(r.space_size) +
          "\n";
  text += "uninformed-distance^2 " + r.uninformed_distance_sq.to_string() + "\n";
  text += "derived-closed-form^2 " + r.derived_closed_form_sq.to_string() + "\n";
  text += "printed-bound-uninformed " + fmt_double(r.printed_bound_uninformed) +
          " (reported, not asserted)\n";
  Json out{{"models", r.model_count},
           {"support", r.support_size},
           {"space", r.space_size},
           {"uninformed_distance_sq", r.uninformed_distance_sq.to_string()},
           {"derived_closed_form_sq", r.derived_closed_form_sq.to_string()},
           {"printed_bound_uninformed", r.printed_bound_uninformed}};
  if (r.omniscient_distance_sq) {
    text += "omniscient-distance^2 " + r.omniscient_distance_sq->to_string() + "\n";
    text += "printed-bound-omniscient " + fmt_double(r.printed_bound_omniscient) +
            " (reported, not asserted)\n";
    out["omniscient_distance_sq"] = r.omniscient_distance_sq->to_string();
    out["printed_bound_omniscient"] = r.printed_bound_omniscient;
  }
  emit(g, out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order sentences as exact vectors over the constituent basis"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--vocab", g.vocab_path, "vocabulary file (json)");
  app.add_option("--budget", g.budget, "enumeration budget in elements");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--seed", g.seed, "seed for sampled estimates");
  app.add_option("--threads", g.threads, "worker threads for the sweeps");
  app.add_option("--scheme", g.scheme, "coefficient scheme: indicator|uniform|cardinality");

  int rank = 1, context = 0, depth = 0, k = 1, max_size = 2, tree_depth = 1, refute_depth = 1;
  bool iso = false, literal = false, no_refuter = false;
  std::string formula, formula2, model_path, models_dir, measure = "uniform", target =
      "uninformed", theory_path, knowledge_path, state, ante, cons, alpha = "1/10";

  auto* constituents = app.add_subcommand("constituents", "enumerate and classify");
  auto* c_enum = constituents->add_subcommand("enum");
  c_enum->add_option("--rank", rank)->required();
  c_enum->add_option("--context", context);
  auto* c_dnf = constituents->add_subcommand("dnf");
  c_dnf->add_option("--rank", rank)->required();
  c_dnf->add_option("formula", formula)->required();
  auto* c_count = constituents->add_subcommand("count");
  c_count->add_option("--rank", rank)->required();
  c_count->add_option("--context", context);

  auto* vec = app.add_subcommand("vec", "vector-space operations");
  auto* v_embed = vec->add_subcommand("embed");
  v_embed->add_option("--rank", rank)->required();
  v_embed->add_option("formula", formula)->required();
  auto* v_inner = vec->add_subcommand("inner");
  v_inner->add_option("--rank", rank)->required();
  v_inner->add_option("formula", formula)->required();
  v_inner->add_option("formula2", formula2)->required();
  auto* v_mp = vec->add_subcommand("mp");
  v_mp->add_option("--rank", rank)->required();
  v_mp->add_option("--state", state)->required();
  v_mp->add_option("--antecedent", ante)->required();
  v_mp->add_option("--consequent", cons)->required();
  auto* v_plaus = vec->add_subcommand("plaus");
  v_plaus->add_option("--rank", rank)->required();
  v_plaus->add_option("formula", formula)->required();
  auto* v_entropy = vec->add_subcommand("entropy");
  v_entropy->add_option("--rank", rank)->required();
  v_entropy->add_option("--alpha", alpha);
  v_entropy->add_option("formula", formula)->required();

  auto* model = app.add_subcommand("model", "finite models");
  auto* m_check = model->add_subcommand("check");
  m_check->add_option("--model", model_path)->required();
  m_check->add_option("formula", formula)->required();
  auto* m_classify = model->add_subcommand("classify");
  m_classify->add_option("--model", model_path)->required();
  m_classify->add_option("--rank", rank)->required();
  auto* m_enum = model->add_subcommand("enum");
  m_enum->add_option("--max-size", max_size)->required();
  m_enum->add_flag("--iso", iso);

  auto* tree = app.add_subcommand("tree", "refinement trees");
  auto* t_build = tree->add_subcommand("build");
  t_build->add_option("--depth", depth)->required();
  t_build->add_option("--measure", measure);

  auto* prove = app.add_subcommand("prove", "refutation and component proofs");
  auto* p_refute = prove->add_subcommand("refute");
  p_refute->add_option("--rank", rank)->required();
  p_refute->add_option("--depth", depth);
  p_refute->add_option("formula", formula)->required();
  auto* p_sandwich = prove->add_subcommand("sandwich");
  p_sandwich->add_option("--rank", rank)->required();
  p_sandwich->add_option("--depth", depth);
  p_sandwich->add_option("--models", models_dir);
  p_sandwich->add_option("formula", formula)->required();

  auto* know = app.add_subcommand("know", "agent knowledge");
  std::vector<std::string> know_modes = {"build", "beliefs", "rank", "measure"};
  std::map<std::string, CLI::App*> know_subs;
  for (const auto& mode : know_modes) {
    auto* sub = know->add_subcommand(mode);
    sub->add_option("--knowledge", knowledge_path)->required();
    sub->add_option("--rank", rank);
    sub->add_option("--refute-depth", refute_depth);
    sub->add_option("--depth", tree_depth);
    sub->add_flag("--literal-refute", literal);
    sub->add_flag("--no-refuter", no_refuter);
    know_subs[mode] = sub;
  }

  auto* cube = app.add_subcommand("cube", "hypercube statistics");
  auto* cb_stats = cube->add_subcommand("stats");
  cb_stats->add_option("--rank", rank)->required();
  cb_stats->add_option("--theory", theory_path);
  cb_stats->add_option("--refute-depth", refute_depth);

  auto* span = app.add_subcommand("span", "approximate spanning");
  auto* s_greedy = span->add_subcommand("greedy");
  s_greedy->add_option("--rank", rank)->required();
  s_greedy->add_option("--k", k)->required();
  s_greedy->add_option("--target", target);
  auto* s_model = span->add_subcommand("model-report");
  s_model->add_option("--rank", rank)->required();
  s_model->add_option("--models", models_dir);
  s_model->add_option("formula", formula)->required();

  // Global flags may appear after the subcommand.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (auto* sub : cmd->get_subcommands({})) enable_fallthrough(sub);
  };
  for (auto* sub : app.get_subcommands({})) enable_fallthrough(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_enum->parsed()) return cmd_constituents_enum(g, rank, context);
    if (c_dnf->parsed()) return cmd_constituents_dnf(g, rank, formula);
    if (c_count->parsed()) return cmd_constituents_count(g, rank, context);
    if (v_embed->parsed()) return cmd_vec_embed(g, rank, formula);
    if (v_inner->parsed()) return cmd_vec_inner(g, rank, formula, formula2);
    if (v_mp->parsed()) return cmd_vec_mp(g, rank, state, ante, cons);
    if (v_plaus->parsed()) return cmd_vec_plaus(g, rank, formula);
    if (v_entropy->parsed()) return cmd_vec_entropy(g, rank, alpha, formula);
    if (m_check->parsed()) return cmd_model_check(g, model_path, formula);
    if (m_classify->parsed()) return cmd_model_classify(g, model_path, rank);
    if (m_enum->parsed()) return cmd_model_enum(g, max_size, iso);
    if (t_build->parsed()) return cmd_tree_build(g, depth, measure);
    if (p_refute->parsed()) return cmd_prove_refute(g, rank, depth, formula);
    if (p_sandwich->parsed()) return cmd_prove_sandwich(g, rank, depth, models_dir, formula);
    for (const auto& mode : know_modes)
      if (know_subs[mode]->parsed())
        return cmd_know(g, mode, knowledge_path, rank, refute_depth, tree_depth, literal,
                        no_refuter);
    if (cb_stats->parsed()) return cmd_cube_stats(g, rank, theory_path, refute_depth);
    if (s_greedy->parsed()) return cmd_span_greedy(g, rank, k, target);
    if (s_model->parsed()) return cmd_span_model_report(g, rank, models_dir, formula);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
