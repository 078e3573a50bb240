#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "folspace/constituents.hpp"
#include "folspace/rational.hpp"

namespace folspace {

// Coefficient conventions for embedding a sentence on its normal-form
// support: all ones, all 1/N, or all N with N the support size. The
// indicator convention makes join/meet/complement coincide with the
// boolean connectives on embedded sentences.
enum class CoefficientScheme { Indicator, UniformOverDnf, Cardinality };

// Finitely supported exact-rational vector over the rank-r sentence
// constituents of one universe. Zero entries are never stored.
class SparseVector {
 public:
  SparseVector(const Universe* u, int rank) : uni_(u), rank_(rank) {}

  const Universe* universe() const { return uni_; }
  int rank() const { return rank_; }
  const std::map<uint32_t, BigRat>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  BigRat at(uint32_t idx) const;
  void set(uint32_t idx, const BigRat& v);

  bool operator==(const SparseVector& o) const;

 private:
  const Universe* uni_;
  int rank_;
  std::map<uint32_t, BigRat> entries_;
};

SparseVector embed(const Universe& u, const FormulaPtr& f, int rank,
                   CoefficientScheme scheme = CoefficientScheme::Indicator);

BigRat inner(const SparseVector& v, const SparseVector& w);

// Exact orthogonalization; linearly dependent inputs drop out as zero
// vectors. With normalize set, each survivor is rescaled to unit sup-norm
// (the largest coefficient magnitude becomes 1), which keeps exactness.
std::vector<SparseVector> gram_schmidt(const std::vector<SparseVector>& vs,
                                       bool normalize = false);

SparseVector join(const SparseVector& v, const SparseVector& w);  // pointwise max
SparseVector meet(const SparseVector& v, const SparseVector& w);  // pointwise min

// Mass 1 on every constituent of the reference set outside the vector's
// support.
SparseVector complement(const SparseVector& v, const ConstituentSet& reference);

// (state min complement(antecedent)) max consequent.
SparseVector mp_apply(const Universe& u, const FormulaPtr& antecedent,
                      const FormulaPtr& consequent, const SparseVector& state, int rank,
                      CoefficientScheme scheme = CoefficientScheme::Indicator);

// Probability-weighted mass; p maps constituent index to mass and must sum
// to 1 over the rank-r space (uniform when omitted).
BigRat plausibility(const SparseVector& v,
                    const std::optional<std::map<uint32_t, BigRat>>& p = std::nullopt);

// Sum of a_i (1 - log a_i) over every coordinate of the space; requires all
// coordinates strictly positive. Floating point enters only via log.
double unnorm_entropy(const SparseVector& v);

// 1 on the sentence's support, alpha elsewhere.
SparseVector dagger_vector(const Universe& u, const FormulaPtr& f, int rank,
                           const BigRat& alpha);
SparseVector dagger_of(const SparseVector& v, const BigRat& alpha);

struct TheoryDimension {
  bool exact = false;
  uint64_t dimension = 0;  // meaningful when exact
  uint64_t lower = 0;      // constituents with a model found
  uint64_t upper = 0;      // |Delta| minus refuted constituents
  uint64_t total = 0;      // |Delta^(r)|, the unconditional upper bound
};

// Number of rank-r constituents consistent with the axioms. Exact for
// monadic vocabularies via bounded model search; otherwise an interval
// from found models below and syntactic refutations above.
TheoryDimension theory_dimension(const Universe& u, const FormulaPtr& axioms, int rank);

}  // namespace folspace
