#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folspace/errors.hpp"
#include "folspace/vectorspace.hpp"
#include "test_support.hpp"

using namespace folspace;
using namespace folspace::testing;

namespace {
constexpr uint32_t d11 = 0, d10 = 1, d01 = 2, d00 = 3;

struct Fixture {
  Universe u{vocab_p()};
  Vocabulary v = vocab_p();
  FormulaPtr some = parse_sentence("exists x. P(x)", v);
  FormulaPtr all = parse_sentence("forall x. P(x)", v);
  FormulaPtr none = parse_sentence("forall x. !P(x)", v);
};

SparseVector random_vector(Fixture& fx, Rng& rng) {
  SparseVector out(&fx.u, 1);
  for (uint32_t i = 0; i < 4; ++i) {
    int num = rng.range(7) - 3;
    if (num) out.set(i, BigRat(num, rng.range(3) + 1));
  }
  return out;
}
}  // namespace

TEST_CASE("embedding places coefficients on the normal form") {
  Fixture fx;
  SparseVector v = embed(fx.u, fx.some, 1, CoefficientScheme::Indicator);
  CHECK(v.at(d11) == BigRat(1));
  CHECK(v.at(d10) == BigRat(1));
  CHECK(v.at(d01).is_zero());
  CHECK(embed(fx.u, Formula::bottom(), 1, CoefficientScheme::Indicator).is_zero());
  SparseVector w = embed(fx.u, fx.some, 1, CoefficientScheme::UniformOverDnf);
  CHECK(w.at(d11) == BigRat(1, 2));
  SparseVector c = embed(fx.u, fx.some, 1, CoefficientScheme::Cardinality);
  CHECK(c.at(d10) == BigRat(2));
}

TEST_CASE("inner product") {
  Fixture fx;
  SparseVector vs = embed(fx.u, fx.some, 1, CoefficientScheme::Indicator);
  SparseVector va = embed(fx.u, fx.all, 1, CoefficientScheme::Indicator);
  CHECK(inner(vs, va) == BigRat(1));  // overlap exactly at the all-P world
  CHECK(inner(vs, SparseVector(&fx.u, 1)).is_zero());
  // Mutually exclusive sentences are orthogonal.
  CHECK(inner(vs, embed(fx.u, Formula::lnot(fx.some), 1, CoefficientScheme::Indicator)).is_zero());

  SUBCASE("inner product axioms on random vectors") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      SparseVector a = random_vector(fx, rng), b = random_vector(fx, rng),
                   c = random_vector(fx, rng);
      CHECK(inner(a, b) == inner(b, a));
      SparseVector apb(&fx.u, 1);
      for (uint32_t k = 0; k < 4; ++k) apb.set(k, a.at(k) + b.at(k));
      CHECK(inner(apb, c) == inner(a, c) + inner(b, c));
      BigRat self = inner(a, a);
      CHECK(self >= BigRat(0));
      CHECK((self.is_zero() == a.is_zero()));
    }
  }
  SUBCASE("orthogonal unsatisfiable pair: the converse direction fails") {
    // Two distinct impossible worlds at rank 2 embed disjointly, so their
    // inner product vanishes even though neither denotes a possibility.
    Universe& u = fx.u;
    std::vector<uint32_t> unsat;
    for (uint32_t i = 0; i < 256 && unsat.size() < 2; ++i)
      if (u.trivially_inconsistent(u.constituent_at(2, i))) unsat.push_back(i);
    REQUIRE(unsat.size() == 2);
    SparseVector a = embed(u, u.to_formula(u.constituent_at(2, unsat[0])), 2);
    SparseVector b = embed(u, u.to_formula(u.constituent_at(2, unsat[1])), 2);
    CHECK(!a.is_zero());
    CHECK(inner(a, b).is_zero());
  }
  SUBCASE("rank mismatch is rejected") {
    SparseVector a(&fx.u, 1), b(&fx.u, 2);
    a.set(0, BigRat(1));
    b.set(0, BigRat(1));
    CHECK_THROWS_AS(inner(a, b), rank_mismatch);
  }
}

TEST_CASE("orthogonalization") {
  Fixture fx;
  SUBCASE("an already orthogonal family passes through") {
    std::vector<SparseVector> std_basis;
    for (uint32_t i = 0; i < 4; ++i) {
      SparseVector e(&fx.u, 1);
      e.set(i, BigRat(1));
      std_basis.push_back(e);
    }
    auto out = gram_schmidt(std_basis);
    REQUIRE(out.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(out[i] == std_basis[i]);
  }
  SUBCASE("the negation-refinement enumeration comes out orthogonal") {
    FormulaPtr f1 = fx.some, f2 = fx.all;
    std::vector<FormulaPtr> chain = {
        Formula::lnot(f1),
        f1,
        Formula::land(Formula::lnot(f1), Formula::lnot(f2)),
        Formula::land(Formula::lnot(f1), f2),
        Formula::land(f1, Formula::lnot(f2)),
        Formula::land(f1, f2),
    };
    std::vector<SparseVector> vs;
    for (const auto& f : chain) vs.push_back(embed(fx.u, f, 1, CoefficientScheme::Indicator));
    auto out = gram_schmidt(vs);
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = i + 1; j < out.size(); ++j) CHECK(inner(out[i], out[j]).is_zero());
    CHECK(out.size() == 4);  // the six sentences span the whole space
  }
  SUBCASE("duplicates drop out") {
    SparseVector a = embed(fx.u, fx.some, 1);
    auto out = gram_schmidt({a, a});
    CHECK(out.size() == 1);
  }
  SUBCASE("sup-norm normalization keeps exactness") {
    SparseVector a(&fx.u, 1);
    a.set(0, BigRat(3, 7));
    a.set(2, BigRat(-5, 2));
    auto out = gram_schmidt({a}, /*normalize=*/true);
    REQUIRE(out.size() == 1);
    CHECK(out[0].at(2) == BigRat(-1));
    CHECK(out[0].at(0) == BigRat(3, 7) / BigRat(5, 2));
  }
}

TEST_CASE("lattice operations and complement") {
  Fixture fx;
  SparseVector vs = embed(fx.u, fx.some, 1);
  SparseVector zero(&fx.u, 1);
  CHECK(join(vs, zero) == vs);
  SparseVector comp = complement(vs, fx.u.dnf(Formula::top(), 1));
  CHECK(comp.at(d01) == BigRat(1));
  CHECK(comp.at(d00) == BigRat(1));
  CHECK(comp.entries().size() == 2);
  CHECK(meet(vs, comp).is_zero());
  // meet with negative coefficients takes the pointwise minimum
  SparseVector neg(&fx.u, 1);
  neg.set(d11, BigRat(-1));
  CHECK(meet(vs, neg).at(d11) == BigRat(-1));
  CHECK(join(vs, neg).at(d11) == BigRat(1));
}

TEST_CASE("deduction operator") {
  Fixture fx;
  SUBCASE("matching antecedent collapses to the consequent") {
    SparseVector state = embed(fx.u, fx.some, 1);
    SparseVector out = mp_apply(fx.u, fx.some, fx.all, state, 1);
    CHECK(out == embed(fx.u, fx.all, 1));
  }
  SUBCASE("three-step chain lands on the final consequent") {
    FormulaPtr f1 = fx.all, f2 = fx.some, f3 = parse_sentence("exists x. P(x) | !P(x)", fx.v);
    SparseVector state = embed(fx.u, f1, 1);
    state = mp_apply(fx.u, f1, f2, state, 1);
    state = mp_apply(fx.u, f2, f3, state, 1);
    CHECK(state == embed(fx.u, f3, 1));
  }
  SUBCASE("sub-state of the antecedent still collapses") {
    SparseVector state(&fx.u, 1);
    state.set(d11, BigRat(1));
    CHECK(mp_apply(fx.u, fx.some, fx.all, state, 1) == embed(fx.u, fx.all, 1));
  }
  SUBCASE("self-implication fixes the state") {
    SparseVector state = embed(fx.u, fx.some, 1);
    CHECK(mp_apply(fx.u, fx.some, fx.some, state, 1) == state);
  }
  SUBCASE("the total system is a fixed point under consequent-top steps") {
    SparseVector top = embed(fx.u, Formula::top(), 1);
    for (uint32_t mask = 0; mask < 16; ++mask) {
      std::vector<FormulaPtr> parts;
      for (uint32_t i = 0; i < 4; ++i)
        if (mask & (1u << i)) parts.push_back(fx.u.to_formula(fx.u.constituent_at(1, i)));
      FormulaPtr phi = Formula::disj(parts);
      SparseVector out = mp_apply(fx.u, phi, Formula::top(), top, 1);
      CHECK(out == top);
      CHECK(plausibility(out) == plausibility(top));
    }
  }
}

TEST_CASE("plausibility") {
  Fixture fx;
  CHECK(plausibility(embed(fx.u, Formula::top(), 1)) == BigRat(1));
  CHECK(plausibility(embed(fx.u, fx.some, 1)) == BigRat(1, 2));
  SUBCASE("explicit masses must form a distribution") {
    std::map<uint32_t, BigRat> p{{0, BigRat(1, 2)}, {1, BigRat(1, 2)}};
    CHECK(plausibility(embed(fx.u, fx.some, 1), p) == BigRat(1));
    std::map<uint32_t, BigRat> bad{{0, BigRat(1, 2)}};
    CHECK_THROWS_AS(plausibility(embed(fx.u, fx.some, 1), bad), not_a_probability);
    std::map<uint32_t, BigRat> neg{{0, BigRat(3, 2)}, {1, BigRat(-1, 2)}};
    CHECK_THROWS_AS(plausibility(embed(fx.u, fx.some, 1), neg), not_a_probability);
  }
  SUBCASE("deduction cannot lower plausibility") {
    SparseVector conj = embed(fx.u, Formula::land(fx.some, fx.all), 1);
    SparseVector chained = mp_apply(fx.u, fx.some, fx.all, embed(fx.u, fx.some, 1), 1);
    CHECK(plausibility(conj) <= plausibility(chained));
  }
}

TEST_CASE("entropy and filler vectors") {
  Fixture fx;
  SUBCASE("all-ones vector has entropy equal to the dimension") {
    CHECK(unnorm_entropy(embed(fx.u, Formula::top(), 1)) == doctest::Approx(4.0));
  }
  SUBCASE("filler vector puts alpha off the support") {
    SparseVector d = dagger_vector(fx.u, fx.some, 1, BigRat(1, 10));
    CHECK(d.at(d11) == BigRat(1));
    CHECK(d.at(d10) == BigRat(1));
    CHECK(d.at(d01) == BigRat(1, 10));
    CHECK(d.at(d00) == BigRat(1, 10));
  }
  SUBCASE("entropy requires full positive support") {
    CHECK_THROWS_AS(unnorm_entropy(embed(fx.u, fx.some, 1)), non_positive_entry);
    CHECK_THROWS_AS(dagger_vector(fx.u, fx.some, 1, BigRat(0)), non_positive_entry);
  }
  SUBCASE("deduction cannot lower filler entropy") {
    BigRat alpha(1, 10);
    SparseVector before = dagger_of(embed(fx.u, Formula::land(fx.some, fx.all), 1), alpha);
    SparseVector after =
        dagger_of(mp_apply(fx.u, fx.some, fx.all, embed(fx.u, fx.some, 1), 1), alpha);
    CHECK(unnorm_entropy(before) <= unnorm_entropy(after) + 1e-12);
  }
}

TEST_CASE("theory dimension") {
  Fixture fx;
  TheoryDimension d1 = theory_dimension(fx.u, fx.all, 1);
  CHECK(d1.exact);
  CHECK(d1.dimension == 1);
  CHECK(d1.total == 4);
  TheoryDimension d2 = theory_dimension(fx.u, fx.all, 2);
  CHECK(d2.dimension == 2);
  CHECK(d2.total == 256);
  TheoryDimension dt = theory_dimension(fx.u, Formula::top(), 1);
  CHECK(dt.dimension == 3);

  // Binary vocabulary: only the interval semi-decision is available.
  Universe lt(vocab_lt());
  TheoryDimension di = theory_dimension(lt, Formula::top(), 1);
  CHECK(!di.exact);
  CHECK(di.lower == 3);
  CHECK(di.upper == 3);
  CHECK(di.total == 4);
}
