// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Oracles are the bounded model search and hand-derived closed
// forms; every tolerance is pinned here.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "folspace/geometry.hpp"
#include "folspace/io.hpp"
#include "folspace/prover.hpp"
#include "folspace/uncertainty.hpp"
#include "folspace/vectorspace.hpp"

using namespace folspace;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 1) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int range(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

FormulaPtr gen_formula(Rng& rng, const Vocabulary& vocab, int rank_budget,
                       std::vector<std::string>& bound, int depth) {
  bool can_atom = !bound.empty();
  int pick = rng.range(10);
  if (depth <= 0) pick = can_atom ? 7 : 9;
  if (!can_atom && pick >= 4 && rank_budget == 0) pick = 9;
  if (!can_atom && pick < 4) pick = 4;
  if (pick < 4 && rank_budget > 0) {
    std::string v = "v" + std::to_string(bound.size() + 1);
    bound.push_back(v);
    FormulaPtr body = gen_formula(rng, vocab, rank_budget - 1, bound, depth - 1);
    bound.pop_back();
    return pick % 2 == 0 ? Formula::forall(v, body) : Formula::exists(v, body);
  }
  if (pick == 4 || pick == 5) {
    FormulaPtr a = gen_formula(rng, vocab, rank_budget, bound, depth - 1);
    FormulaPtr b = gen_formula(rng, vocab, rank_budget, bound, depth - 1);
    return pick == 4 ? Formula::land(a, b) : Formula::lor(a, b);
  }
  if (pick == 6) return Formula::lnot(gen_formula(rng, vocab, rank_budget, bound, depth - 1));
  if (can_atom && pick <= 8) {
    int p = rng.range(static_cast<int>(vocab.size()));
    std::vector<std::string> args;
    for (int i = 0; i < vocab.arity(p); ++i)
      args.push_back(bound[rng.range(static_cast<int>(bound.size()))]);
    return Formula::atom(p, std::move(args));
  }
  return rng.range(2) == 0 ? Formula::top() : Formula::bottom();
}

FormulaPtr gen_sentence(Rng& rng, const Vocabulary& vocab, int max_rank) {
  std::vector<std::string> bound;
  return gen_formula(rng, vocab, max_rank, bound, 5);
}

void report(int criterion, const std::string& label, bool ok, double seconds,
            double limit_seconds) {
  bool timed_out = limit_seconds > 0 && seconds > limit_seconds;
  bool pass = ok && !timed_out;
  std::printf("%s  criterion %2d: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", criterion,
              label.c_str(), seconds,
              timed_out ? ", over time limit" : "");
  if (!pass) ++failures;
}

template <typename Fn>
void criterion(int number, const std::string& label, double limit_seconds, Fn&& body) {
  auto start = Clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    notes.push_back("criterion " + std::to_string(number) + " threw: " + e.what());
    ok = false;
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(number, label, ok, secs, limit_seconds);
}

Vocabulary vocab_p() { return Vocabulary({{"P", 1}}); }

// The sixteen rank-1 sentence representatives over one unary predicate: one
// disjunction of constituents per subset of the basis.
std::vector<FormulaPtr> rank1_representatives(const Universe& u) {
  std::vector<FormulaPtr> out;
  for (uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<FormulaPtr> parts;
    for (uint32_t i = 0; i < 4; ++i)
      if (mask & (1u << i)) parts.push_back(u.to_formula(u.constituent_at(1, i)));
    out.push_back(Formula::disj(parts));
  }
  return out;
}

std::string run_cli(const std::string& bin, const std::string& args, int& exit_code) {
  std::string cmd = bin + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  exit_code = WEXITSTATUS(pclose(pipe));
  return out;
}

}  // namespace

int main() {
  Universe u(vocab_p());
  Vocabulary v = vocab_p();
  std::vector<FiniteModel> small_models = enumerate_models(v, 3);

  criterion(1, "exact counts match exhaustive enumeration", 5.0, [&] {
    bool ok = true;
    const uint64_t expect_p[3] = {1, 4, 256};
    for (int r = 0; r <= 2; ++r) {
      ok = ok && u.delta_count(r, 0).to_u64() == expect_p[r];
      ok = ok && u.delta_table(r).size() == expect_p[r];
    }
    Universe pq(Vocabulary({{"P", 1}, {"Q", 1}}));
    const uint64_t expect_pq[2] = {1, 16};
    for (int r = 0; r <= 1; ++r) {
      ok = ok && pq.delta_count(r, 0).to_u64() == expect_pq[r];
      ok = ok && pq.delta_table(r).size() == expect_pq[r];
    }
    return ok;
  });

  criterion(2, "no small model satisfies two distinct constituents", 30.0, [&] {
    bool ok = true;
    for (int rank = 1; rank <= 2; ++rank) {
      std::vector<FormulaPtr> formulas;
      for (uint32_t i = 0; i < u.delta_table(rank).size(); ++i)
        formulas.push_back(u.to_formula(u.constituent_at(rank, i)));
      for (const auto& m : small_models) {
        size_t holds = 0;
        for (const auto& f : formulas)
          if (check(m, f)) ++holds;
        ok = ok && holds == 1;
        uint32_t cls = *u.find_constituent_index(u.satisfying_constituent(m, rank));
        ok = ok && check(m, formulas[cls]);
      }
      // Structural exclusion as well: distinct constituents never evaluate
      // each other true.
      for (uint32_t i = 0; i < formulas.size(); ++i)
        for (uint32_t j = 0; j < formulas.size(); ++j)
          ok = ok && (u.eval(u.constituent_at(rank, j), formulas[i]) == (i == j));
    }
    return ok;
  });

  criterion(3, "normal form tracks truth in every small model (200 sentences)", 60.0, [&] {
    Rng rng(20260808);
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      FormulaPtr f = gen_sentence(rng, v, 2);
      ConstituentSet s = u.dnf(f, 2);
      for (const auto& m : small_models) {
        uint32_t cls = *u.find_constituent_index(u.satisfying_constituent(m, 2));
        ok = ok && (check(m, f) == s.contains(cls));
      }
    }
    return ok;
  });

  criterion(4, "rank-2 expansions partition each rank-1 constituent's models", 30.0, [&] {
    bool ok = true;
    for (uint32_t i = 0; i < 4; ++i) {
      Constituent d = u.constituent_at(1, i);
      ConstituentSet exp = u.expand(d, 1);
      FormulaPtr df = u.to_formula(d);
      for (const auto& m : small_models) {
        size_t holds = 0;
        for (uint32_t j : exp.members)
          if (check(m, u.to_formula(u.constituent_at(2, j)))) ++holds;
        ok = ok && holds == (check(m, df) ? 1u : 0u);
      }
    }
    return ok;
  });

  criterion(5, "refinement tree: unique prefix parents, implication, additivity", 30.0, [&] {
    RefinementTree t = build_tree(u, 2);
    TreeMeasure m = uniform_measure(t);
    bool ok = t.level_size(0) == 1 && t.level_size(1) == 4 && t.level_size(2) == 256;
    for (int r = 1; r <= 2; ++r) {
      for (uint32_t i = 0; i < t.level_size(r); ++i) {
        ok = ok && t.parent[r][i] < t.level_size(r - 1);
        ok = ok && u.is_prefix(u.constituent_at(r - 1, t.parent[r][i]), u.constituent_at(r, i));
      }
    }
    for (int r = 1; r <= 2; ++r)
      for (uint32_t i = 0; i < t.level_size(r); ++i) {
        FormulaPtr child = u.to_formula(u.constituent_at(r, i));
        FormulaPtr parent = u.to_formula(u.constituent_at(r - 1, t.parent[r][i]));
        for (const auto& mm : small_models)
          if (check(mm, child)) ok = ok && check(mm, parent);
      }
    for (int r = 0; r < 2; ++r)
      for (uint32_t p = 0; p < t.level_size(r); ++p) {
        BigRat sum;
        for (uint32_t c : t.children[r][p]) sum += m.at(r + 1, c);
        if (!t.children[r][p].empty()) ok = ok && sum == m.at(r, p);
      }
    return ok;
  });

  criterion(6, "dense-order displays normalize, pass the syntactic check, and nest", 30.0, [&] {
    Universe lt(Vocabulary({{"<", 2}}));
    Vocabulary lv = lt.vocab();
    FormulaPtr r1 =
        parse_sentence("(exists x1. !(x1 < x1)) & (forall x1. !(x1 < x1))", lv);
    Constituent c1 = lt.constituent_from_formula(r1, 1);
    bool ok = lt.find_constituent_index(c1).has_value();
    ok = ok && lt.delta_table(1).size() == 4;
    ok = ok && !lt.trivially_inconsistent(c1);
    std::string elem =
        "!(x1 < x1)"
        " & (existsE x2. x2 < x1 & !(x1 < x2) & !(x2 < x2))"
        " & (existsE x2. x1 < x2 & !(x2 < x1) & !(x2 < x2))"
        " & (forallE x2. (x2 < x1 & !(x1 < x2) & !(x2 < x2))"
        " | (x1 < x2 & !(x2 < x1) & !(x2 < x2)))";
    std::string display = "(exists x1. " + elem + ") & (forall x1. " + elem + ")";
    Constituent c2 = lt.constituent_from_formula(parse_sentence(display, lv), 2);
    ok = ok && c2.rank() == 2;
    ok = ok && !lt.trivially_inconsistent(c2);
    ok = ok && constituents_equal(lt.remove_top_layer(c2), c1);
    ok = ok && lt.is_prefix(c1, c2);
    return ok;
  });

  criterion(7, "deduction collapses chains, raises plausibility and entropy", 10.0, [&] {
    std::vector<FormulaPtr> reps = rank1_representatives(u);
    BigRat alpha(1, 10);
    bool ok = true;
    for (const auto& f1 : reps) {
      for (const auto& f2 : reps) {
        SparseVector chained = mp_apply(u, f1, f2, embed(u, f1, 1), 1);
        ok = ok && chained == embed(u, f2, 1);
        SparseVector conj = embed(u, Formula::land(f1, f2), 1);
        ok = ok && plausibility(conj) <= plausibility(chained);
        double before = unnorm_entropy(dagger_of(conj, alpha));
        double after = unnorm_entropy(dagger_of(chained, alpha));
        ok = ok && before <= after + 1e-9;
      }
    }
    // Three-step chains land on the final consequent.
    for (uint32_t a = 0; a < 16; a += 5)
      for (uint32_t b = 1; b < 16; b += 6) {
        SparseVector state = embed(u, reps[a], 1);
        state = mp_apply(u, reps[a], reps[b], state, 1);
        state = mp_apply(u, reps[b], reps[15], state, 1);
        ok = ok && state == embed(u, reps[15], 1);
      }
    return ok;
  });

  criterion(8, "refuter: no false refutations; curated impossibilities close by depth 2",
            60.0, [&] {
    Rng rng(4242);
    bool ok = true;
    int satisfiable_seen = 0;
    for (int i = 0; i < 5000 && satisfiable_seen < 200; ++i) {
      FormulaPtr f = gen_sentence(rng, v, 2);
      bool sat = false;
      for (const auto& m : small_models)
        if (check(m, f)) {
          sat = true;
          break;
        }
      if (!sat) continue;
      ++satisfiable_seen;
      ok = ok && !refute(u, f, 2, 2).refuted;
    }
    ok = ok && satisfiable_seen == 200;

    std::vector<std::string> curated = {
        "(exists x. P(x)) & (forall x. !P(x))",
        "forallE x1. false",
        "(forall x. P(x)) & (forall x. !P(x))",
        "false",
        "exists x. P(x) & !P(x)",
        "(exists x1. P(x1) & (forallE x2. false)) & (exists x1. !P(x1) & (forallE x2. false))",
        "!((exists x. P(x)) | !(exists x. P(x)))",
        "(exists x. P(x)) & !(exists x. P(x))",
        "(exists x. !P(x)) & (forall x. P(x))",
        "(forall x. P(x)) & (exists x1. !P(x1) & (forallE x2. false))",
    };
    for (const auto& text : curated) {
      FormulaPtr f = parse_sentence(text, v);
      RefutationResult r = refute(u, f, quantifier_rank(f) > 1 ? 2 : 1, 2);
      ok = ok && r.refuted && r.depth_used <= 2;
    }
    return ok;
  });

  criterion(9, "sandwich resolves the whole space with zero ground-truth error", 30.0, [&] {
    auto mk = [&](std::vector<bool> bits) {
      FiniteModel m;
      m.vocab = v;
      m.tables.resize(1);
      for (size_t i = 0; i < bits.size(); ++i) {
        m.domain.push_back(std::string(1, static_cast<char>('a' + i)));
        if (bits[i]) m.tables[0].insert({static_cast<int>(i)});
      }
      return m;
    };
    std::vector<FiniteModel> models = {mk({true}), mk({false}), mk({true, false})};
    SandwichProof p = sandwich(u, Formula::top(), 1, 0, models);
    bool ok = p.known_one == 3 && p.known_zero == 1 && p.unknown == 0;

    ComponentProofSystem ground = ground_truth_system(u, 1);
    ComponentProofSystem hat = ground;
    for (size_t i = 0; i < p.components.size(); ++i)
      hat.valuation[i] = p.components[i].status == ComponentStatus::KnownOne ? 1 : 0;
    auto [ev, ef] = proof_errors(hat, ground, Formula::top());
    return ok && ev == 0 && ef == 0;
  });

  criterion(10, "knowledge invariants, additive beliefs, omniscience failure", 30.0, [&] {
    Rng rng(99);
    RefuterConfig ref;
    ref.depth = 1;
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<FormulaPtr> conj;
      for (int c = 0; c < 3; ++c) conj.push_back(gen_sentence(rng, v, 1));
      std::vector<FiniteModel> models;
      for (const auto& m : enumerate_models(v, 2))
        if (rng.range(2)) models.push_back(m);
      KnowledgeMatrix k = build_knowledge(u, {}, conj, models, BigRat(1, 2), ref, 1);
      size_t n = k.sentences.size();
      for (size_t j = 0; j < n; ++j) ok = ok && k.entries[0][j] == BigRat(1);
      for (size_t i = 0; i < n; ++i) ok = ok && k.entries[i][i] == BigRat(1);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          ok = ok && k.entries[i][j] >= BigRat(0) && k.entries[i][j] <= BigRat(1);
    }
    RefinementTree t = build_tree(u, 2);
    Rng rng2(7);
    std::vector<std::vector<BigRat>> beliefs_by_node(3);
    for (int r = 0; r <= 2; ++r) {
      beliefs_by_node[r].resize(t.level_size(r));
      for (auto& b : beliefs_by_node[r]) b = BigRat(rng2.range(4), 1 + rng2.range(5));
    }
    TreeMeasure nu = belief_measure(t, beliefs_by_node);
    for (int r = 0; r < 2; ++r)
      for (uint32_t p = 0; p < t.level_size(r); ++p) {
        BigRat sum;
        for (uint32_t c : t.children[r][p]) sum += nu.at(r + 1, c);
        ok = ok && sum == nu.at(r, p);
      }
    BigRat total;
    for (uint32_t i = 0; i < t.level_size(2); ++i) total += nu.at(2, i);
    ok = ok && total == BigRat(1);

    // The agent with the trivial matrix and no models believes everything.
    RefuterConfig empty_refuter;
    empty_refuter.enabled = false;
    KnowledgeMatrix trivial = build_knowledge(u, {}, {}, {}, BigRat(1), empty_refuter, 1);
    ok = ok && trivial.entries.size() == 1 && trivial.entries[0][0] == BigRat(1);
    RefinementTree t1 = build_tree(u, 1);
    TreeMeasure nu2 = belief_measure(t1, agent_node_beliefs(t1, {}, BigRat(1), empty_refuter));
    ok = ok && nu2.at(1, 3) == BigRat(1, 4);  // the refutable world keeps mass
    ok = ok && refute(u, u.to_formula(u.constituent_at(1, 3)), 1, 0).refuted;
    return ok;
  });

  criterion(11, "hypercube influences, variance, and the isoperimetric bound", 30.0, [&] {
    Hypercube cube = constituent_cube(u, 1, [&](uint32_t idx) -> int8_t {
      return has_model(v, u.to_formula(u.constituent_at(1, idx)), monadic_model_bound(v, 1))
                 ? -1
                 : 1;
    });
    bool ok = influence(cube, 0) == BigRat(1, 2) && influence(cube, 1) == BigRat(1, 2);
    PoincareReport pr = check_poincare(cube);
    ok = ok && pr.variance == BigRat(3, 4) && pr.holds;
    Rng rng(5150);
    for (int trial = 0; trial < 1000; ++trial) {
      uint64_t total = 1 + rng.range(1024);
      uint64_t sat = rng.range(static_cast<int>(total) + 1);
      BigRat mean = (BigRat(static_cast<int64_t>(total - sat)) -
                     BigRat(static_cast<int64_t>(sat))) /
                    BigRat(static_cast<int64_t>(total));
      ok = ok && variance_of_valuation(sat, total) == BigRat(1) - mean * mean;
    }
    for (uint64_t n : {4ull, 256ull, 1024ull}) {
      BigRat expected = BigRat(4, static_cast<int64_t>(n)) *
                        (BigRat(1) - BigRat(1, static_cast<int64_t>(n)));
      ok = ok && variance_of_valuation(1, n) == expected;
    }
    return ok;
  });

  criterion(12, "greedy spanning meets its bound; model-span distance is exact", 30.0, [&] {
    std::vector<uint32_t> all = {0, 1, 2, 3};
    SparseVector tu = truth_representation(u, 1, TruthKind::Uninformed);
    bool ok = true;
    for (int k : {1, 2, 4}) {
      SpanResult r = approx_span(tu, all, BigRat(1, 4), k);
      ok = ok && r.bound_defined && r.within_bound;
      ok = ok && r.bound_sq == BigRat(2) / (BigRat(k) * BigRat(4));
    }
    FiniteModel m;
    m.vocab = v;
    m.domain = {"a"};
    m.tables.resize(1);
    m.tables[0].insert({0});
    FormulaPtr some = parse_sentence("exists x. P(x)", v);
    ModelSpanReport rep = model_span_report(u, some, 1, {m}, {});
    // Coordinate oracle: support gets 1/2 - 1/4, the rest 1/4.
    BigRat byhand = BigRat(2) * (BigRat(1, 2) - BigRat(1, 4)) * (BigRat(1, 2) - BigRat(1, 4)) +
                    BigRat(2) * BigRat(1, 4) * BigRat(1, 4);
    ok = ok && rep.uninformed_distance_sq == byhand;
    ok = ok && rep.derived_closed_form_sq == byhand;
    std::printf("      printed bound reported, not asserted: %.12g vs exact %.12g\n",
                rep.printed_bound_uninformed, std::sqrt(byhand.to_double()));
    return ok;
  });

  criterion(13, "byte-identical machine output across repeated seeded runs", 60.0, [&] {
    const char* bin = std::getenv("FOL_BIN");
    const char* dat = std::getenv("FOL_DATA");
    if (!bin || !dat) {
      notes.push_back("criterion 13 needs FOL_BIN and FOL_DATA");
      return false;
    }
    std::string d(dat);
    std::vector<std::string> suite = {
        "constituents enum --vocab " + d + "/p.json --rank 2 --json --seed 11",
        "constituents dnf --vocab " + d + "/p.json --rank 2 --json --seed 11 \"exists x. P(x)\"",
        "vec embed --vocab " + d + "/p.json --rank 1 --json --seed 11 \"forall x. P(x)\"",
        "vec mp --vocab " + d + "/p.json --rank 1 --json --seed 11 --state \"exists x. P(x)\""
        " --antecedent \"exists x. P(x)\" --consequent \"forall x. P(x)\"",
        "model enum --vocab " + d + "/p.json --max-size 2 --json --seed 11",
        "tree build --vocab " + d + "/p.json --depth 2 --json --seed 11",
        "prove sandwich --vocab " + d + "/p.json --rank 1 --depth 0 --models " + d +
            "/models --json --seed 11 \"true\"",
        "know build --vocab " + d + "/p.json --knowledge " + d +
            "/knowledge.json --rank 1 --refute-depth 0 --json --seed 11",
        "know measure --vocab " + d + "/p.json --knowledge " + d +
            "/knowledge.json --depth 2 --refute-depth 0 --json --seed 11",
        "cube stats --vocab " + d + "/p.json --rank 1 --json --seed 11",
        "span greedy --vocab " + d + "/p.json --rank 1 --k 4 --json --seed 11",
        "span model-report --vocab " + d + "/p.json --rank 1 --models " + d +
            "/models_p --json --seed 11 \"exists x. P(x)\"",
    };
    std::string first, second;
    for (const auto& cmd : suite) {
      int code1 = 0, code2 = 0;
      first += run_cli(bin, cmd, code1);
      second += run_cli(bin, cmd, code2);
      if (code1 != code2) return false;
    }
    return !first.empty() && first == second;
  });

  for (const auto& n : notes) std::printf("note: %s\n", n.c_str());
  std::printf("%d of 13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
