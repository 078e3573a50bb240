#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "folspace/errors.hpp"
#include "folspace/uncertainty.hpp"
#include "test_support.hpp"

using namespace folspace;
using namespace folspace::testing;

namespace {
constexpr uint32_t d00 = 3;

FiniteModel monadic_model(const Vocabulary& v, const std::vector<bool>& p_table) {
  FiniteModel m;
  m.vocab = v;
  m.tables.resize(v.size());
  for (size_t i = 0; i < p_table.size(); ++i) {
    m.domain.push_back(std::string(1, static_cast<char>('a' + i)));
    if (p_table[i]) m.tables[0].insert({static_cast<int>(i)});
  }
  return m;
}
}  // namespace

TEST_CASE("knowledge matrix construction") {
  Universe u(vocab_p());
  Vocabulary v = vocab_p();
  FormulaPtr some = parse_sentence("exists x. P(x)", v);
  RefuterConfig ref;
  ref.depth = 0;

  SUBCASE("a believed conjecture with a supporting model") {
    KnowledgeMatrix k = build_knowledge(u, {Formula::bottom()}, {some},
                                        {monadic_model(v, {true})}, BigRat(1), ref, 1);
    CHECK(k.entries[1][0] == BigRat(0));  // no model refutes it, smoothing included
    CHECK(beliefs(k)[1] == BigRat(1));
  }
  SUBCASE("row zero and the diagonal are pinned to one") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<FormulaPtr> conj;
      for (int c = 0; c < 3; ++c) conj.push_back(gen_sentence(rng, v, 1));
      std::vector<FiniteModel> models;
      for (const auto& m : enumerate_models(v, 2))
        if (rng.range(2)) models.push_back(m);
      KnowledgeMatrix k = build_knowledge(u, {}, conj, models, BigRat(1, 2), ref, 1);
      size_t n = k.sentences.size();
      for (size_t j = 0; j < n; ++j) CHECK(k.entries[0][j] == BigRat(1));
      for (size_t i = 0; i < n; ++i) CHECK(k.entries[i][i] == BigRat(1));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          CHECK(k.entries[i][j] >= BigRat(0));
          CHECK(k.entries[i][j] <= BigRat(1));
        }
    }
  }
  SUBCASE("self-implication closes through the refuter") {
    KnowledgeMatrix k = build_knowledge(u, {}, {some, some}, {}, BigRat(1), ref, 1);
    CHECK(k.entries[1][2] == BigRat(1));
    CHECK(k.entries[2][1] == BigRat(1));
  }
  SUBCASE("parallel and serial fills agree") {
    Universe up(vocab_p());
    up.set_threads(2);
    Rng rng(3);
    std::vector<FormulaPtr> conj;
    for (int c = 0; c < 4; ++c) conj.push_back(gen_sentence(rng, v, 1));
    std::vector<FiniteModel> models = enumerate_models(v, 2);
    KnowledgeMatrix a = build_knowledge(up, {}, conj, models, BigRat(1), ref, 1);
    KnowledgeMatrix b = build_knowledge_serial(up, {}, conj, models, BigRat(1), ref, 1);
    CHECK(a.entries == b.entries);
  }
  SUBCASE("the two refuter readings differ on a valid-antecedent pair") {
    RefuterConfig literal = ref;
    literal.literal_reading = true;
    std::vector<FormulaPtr> conj = {Formula::top(), Formula::bottom()};
    KnowledgeMatrix kd = build_knowledge(u, {}, conj, {monadic_model(v, {true})}, BigRat(1),
                                         ref, 1);
    KnowledgeMatrix kl = build_knowledge(u, {}, conj, {monadic_model(v, {true})}, BigRat(1),
                                         literal, 1);
    CHECK(kd.entries[1][2] == BigRat(0));  // top -> bottom holds in no model
    CHECK(kl.entries[1][2] == BigRat(1));  // the implication itself refutes
  }
}

TEST_CASE("belief-weighted measures on the refinement tree") {
  Universe u(vocab_p());
  RefinementTree t = build_tree(u, 2);

  SUBCASE("equal beliefs reproduce the uniform split") {
    std::vector<std::vector<BigRat>> b(3);
    for (int r = 0; r <= 2; ++r) b[r].assign(t.level_size(r), BigRat(1, 3));
    TreeMeasure nu = belief_measure(t, b);
    TreeMeasure uniform = uniform_measure(t);
    for (int r = 0; r <= 2; ++r)
      for (uint32_t i = 0; i < t.level_size(r); ++i) CHECK(nu.at(r, i) == uniform.at(r, i));
  }
  SUBCASE("a dead constituent redistributes its mass") {
    std::vector<std::vector<BigRat>> b(3);
    for (int r = 0; r <= 2; ++r) b[r].assign(t.level_size(r), BigRat(1));
    b[1][d00] = BigRat(0);
    TreeMeasure nu = belief_measure(t, b);
    for (uint32_t i = 0; i < 4; ++i)
      CHECK(nu.at(1, i) == (i == d00 ? BigRat(0) : BigRat(1, 3)));
    // Zero propagates below.
    for (uint32_t c : t.children[1][d00]) CHECK(nu.at(2, c) == BigRat(0));
  }
  SUBCASE("additivity is exact and the total is one for random beliefs") {
    Rng rng(12);
    std::vector<std::vector<BigRat>> b(3);
    for (int r = 0; r <= 2; ++r) {
      b[r].resize(t.level_size(r));
      for (auto& x : b[r]) x = BigRat(rng.range(5), 1 + rng.range(6));
    }
    TreeMeasure nu = belief_measure(t, b);
    for (int r = 0; r < 2; ++r)
      for (uint32_t p = 0; p < t.level_size(r); ++p) {
        BigRat sum;
        for (uint32_t c : t.children[r][p]) sum += nu.at(r + 1, c);
        CHECK(sum == nu.at(r, p));
      }
    BigRat total;
    for (uint32_t i = 0; i < t.level_size(2); ++i) total += nu.at(2, i);
    CHECK(total == BigRat(1));
  }
  SUBCASE("negative beliefs are rejected") {
    std::vector<std::vector<BigRat>> b(3);
    for (int r = 0; r <= 2; ++r) b[r].assign(t.level_size(r), BigRat(1));
    b[2][0] = BigRat(-1, 2);
    CHECK_THROWS_AS(belief_measure(t, b), negative_belief);
  }
}

TEST_CASE("an agent without models or refuter is not logically omniscient") {
  Universe u(vocab_p());
  RefinementTree t = build_tree(u, 1);
  RefuterConfig no_refuter;
  no_refuter.enabled = false;
  auto b = agent_node_beliefs(t, {}, BigRat(1), no_refuter);
  TreeMeasure nu = belief_measure(t, b);
  // The impossible world keeps positive probability even though it refutes.
  CHECK(nu.at(1, d00) == BigRat(1, 4));
  CHECK(refute(u, u.to_formula(u.constituent_at(1, d00)), 1, 0).refuted);
  // With the refuter switched on, the same agent prunes it.
  RefuterConfig with_refuter;
  with_refuter.depth = 0;
  auto b2 = agent_node_beliefs(t, {}, BigRat(1), with_refuter);
  TreeMeasure nu2 = belief_measure(t, b2);
  CHECK(nu2.at(1, d00) == BigRat(0));
}

TEST_CASE("spectral conjecture ranking") {
  Universe u(vocab_p());
  Vocabulary v = vocab_p();
  RefuterConfig ref;
  ref.depth = 0;

  SUBCASE("a single conjecture ranks deterministically") {
    KnowledgeMatrix k = build_knowledge(u, {}, {parse_sentence("exists x. P(x)", v)},
                                        {monadic_model(v, {true})}, BigRat(1), ref, 1);
    auto scores = rank_conjectures(k);
    REQUIRE(scores.size() == 1);
    CHECK(scores[0].sentence_index == 1);
  }
  SUBCASE("identical conjectures tie and keep index order") {
    FormulaPtr some = parse_sentence("exists x. P(x)", v);
    KnowledgeMatrix k =
        build_knowledge(u, {}, {some, some}, {monadic_model(v, {true})}, BigRat(1), ref, 1);
    auto scores = rank_conjectures(k);
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].score == doctest::Approx(scores[1].score));
    CHECK(scores[0].sentence_index == 1);
    CHECK(scores[1].sentence_index == 2);
  }
  SUBCASE("hand-checked two-by-two decomposition") {
    // One conjecture true in the model, one false and unrefutable: the block
    // is [[1,0],[1/2,1]]; centered columns are rank one with singular value
    // sqrt(10)/4 and right direction (1,-2)/sqrt(5).
    FormulaPtr c1 = parse_sentence("exists x. P(x)", v);
    FormulaPtr c2 = parse_sentence("forall x. !P(x)", v);
    KnowledgeMatrix k =
        build_knowledge(u, {}, {c1, c2}, {monadic_model(v, {true})}, BigRat(1), ref, 1);
    CHECK(k.entries[1][2] == BigRat(0));
    CHECK(k.entries[2][1] == BigRat(1, 2));
    auto scores = rank_conjectures(k);
    double sigma = std::sqrt(10.0) / 4.0;
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].sentence_index == 2);
    CHECK(scores[0].score == doctest::Approx(sigma * 4.0 / 5.0).epsilon(1e-9));
    CHECK(scores[1].score == doctest::Approx(sigma * 1.0 / 5.0).epsilon(1e-9));
  }
  SUBCASE("permuting conjectures permutes the ranking") {
    FormulaPtr c1 = parse_sentence("exists x. P(x)", v);
    FormulaPtr c2 = parse_sentence("forall x. !P(x)", v);
    FormulaPtr c3 = parse_sentence("forall x. P(x)", v);
    std::vector<FiniteModel> models = {monadic_model(v, {true}), monadic_model(v, {false, true})};
    KnowledgeMatrix a = build_knowledge(u, {}, {c1, c2, c3}, models, BigRat(1), ref, 1);
    KnowledgeMatrix b = build_knowledge(u, {}, {c3, c1, c2}, models, BigRat(1), ref, 1);
    auto sa = rank_conjectures(a);
    auto sb = rank_conjectures(b);
    // index map: a's sentence i corresponds to b's sentence (i % 3) + 1
    std::map<size_t, size_t> perm{{1, 2}, {2, 3}, {3, 1}};
    REQUIRE(sa.size() == sb.size());
    for (size_t i = 0; i < sa.size(); ++i) {
      CHECK(perm[sa[i].sentence_index] == sb[i].sentence_index);
      CHECK(sa[i].score == doctest::Approx(sb[i].score).epsilon(1e-9));
    }
  }
}

TEST_CASE("conjecturing basis reports") {
  Universe u(vocab_p());
  Vocabulary v = vocab_p();
  RefuterConfig ref;
  ref.depth = 0;
  FormulaPtr some = parse_sentence("exists x. P(x)", v);

  SUBCASE("a complementary pair spans the whole space's top element") {
    KnowledgeMatrix k =
        build_knowledge(u, {}, {some, Formula::lnot(some)}, {}, BigRat(1), ref, 1);
    ConjecturingBasisReport r = conjecturing_basis_report(k, 1);
    CHECK(r.contains_top);
  }
  SUBCASE("a single conjecture does not reach the top element") {
    KnowledgeMatrix k = build_knowledge(u, {}, {some}, {}, BigRat(1), ref, 1);
    ConjecturingBasisReport r = conjecturing_basis_report(k, 1);
    CHECK(!r.contains_top);
  }
  SUBCASE("duplicates are reported as dependence") {
    KnowledgeMatrix k = build_knowledge(u, {}, {some, some}, {}, BigRat(1), ref, 1);
    ConjecturingBasisReport r = conjecturing_basis_report(k, 1);
    CHECK(r.gram_rank < r.sentence_count);
  }
}
