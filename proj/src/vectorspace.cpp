#include "folspace/vectorspace.hpp"

#include <algorithm>
#include <cmath>

#include "folspace/errors.hpp"

namespace folspace {

namespace {
void require_same_space(const SparseVector& a, const SparseVector& b) {
  if (a.universe() != b.universe() || a.rank() != b.rank())
    throw rank_mismatch("vectors live in different constituent spaces");
}
}  // namespace

BigRat SparseVector::at(uint32_t idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? BigRat() : it->second;
}

void SparseVector::set(uint32_t idx, const BigRat& v) {
  if (v.is_zero())
    entries_.erase(idx);
  else
    entries_[idx] = v;
}

bool SparseVector::operator==(const SparseVector& o) const {
  return uni_ == o.uni_ && rank_ == o.rank_ && entries_ == o.entries_;
}

SparseVector embed(const Universe& u, const FormulaPtr& f, int rank, CoefficientScheme scheme) {
  ConstituentSet support = u.dnf(f, rank);
  BigRat coeff(1);
  int64_t n = static_cast<int64_t>(support.size());
  if (scheme == CoefficientScheme::UniformOverDnf && n > 0) coeff = BigRat(1, n);
  if (scheme == CoefficientScheme::Cardinality) coeff = BigRat(n);
  SparseVector v(&u, rank);
  for (uint32_t idx : support.members) v.set(idx, coeff);
  return v;
}

BigRat inner(const SparseVector& v, const SparseVector& w) {
  require_same_space(v, w);
  BigRat sum;
  const auto& a = v.entries();
  const auto& b = w.entries();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

std::vector<SparseVector> gram_schmidt(const std::vector<SparseVector>& vs, bool normalize) {
  std::vector<SparseVector> basis;
  for (const SparseVector& v : vs) {
    if (!basis.empty()) require_same_space(v, basis.front());
    SparseVector residual = v;
    for (const SparseVector& b : basis) {
      BigRat proj = inner(residual, b) / inner(b, b);
      if (proj.is_zero()) continue;
      for (const auto& [idx, c] : b.entries()) residual.set(idx, residual.at(idx) - proj * c);
    }
    if (!residual.is_zero()) basis.push_back(std::move(residual));
  }
  if (normalize) {
    for (SparseVector& b : basis) {
      BigRat sup;
      for (const auto& [idx, c] : b.entries()) {
        BigRat mag = c.sign() < 0 ? -c : c;
        if (mag > sup) sup = mag;
      }
      SparseVector scaled(b.universe(), b.rank());
      for (const auto& [idx, c] : b.entries()) scaled.set(idx, c / sup);
      b = std::move(scaled);
    }
  }
  return basis;
}

SparseVector join(const SparseVector& v, const SparseVector& w) {
  require_same_space(v, w);
  SparseVector out(v.universe(), v.rank());
  for (const auto& [idx, c] : v.entries()) {
    BigRat other = w.at(idx);
    out.set(idx, c > other ? c : other);
  }
  for (const auto& [idx, c] : w.entries()) {
    if (v.entries().count(idx)) continue;
    BigRat zero;
    out.set(idx, c > zero ? c : zero);
  }
  return out;
}

SparseVector meet(const SparseVector& v, const SparseVector& w) {
  require_same_space(v, w);
  SparseVector out(v.universe(), v.rank());
  for (const auto& [idx, c] : v.entries()) {
    BigRat other = w.at(idx);
    out.set(idx, c < other ? c : other);
  }
  for (const auto& [idx, c] : w.entries()) {
    if (v.entries().count(idx)) continue;
    BigRat zero;
    out.set(idx, c < zero ? c : zero);
  }
  return out;
}

SparseVector complement(const SparseVector& v, const ConstituentSet& reference) {
  if (reference.rank != v.rank())
    throw rank_mismatch("complement reference set has a different rank");
  SparseVector out(v.universe(), v.rank());
  for (uint32_t idx : reference.members)
    if (v.at(idx).is_zero()) out.set(idx, BigRat(1));
  return out;
}

SparseVector mp_apply(const Universe& u, const FormulaPtr& antecedent,
                      const FormulaPtr& consequent, const SparseVector& state, int rank,
                      CoefficientScheme scheme) {
  if (state.rank() != rank || state.universe() != &u)
    throw rank_mismatch("state vector rank differs from the operator rank");
  SparseVector ante = embed(u, antecedent, rank, scheme);
  SparseVector cons = embed(u, consequent, rank, scheme);
  ConstituentSet full;
  full.rank = rank;
  for (uint32_t i = 0; i < u.delta_table(rank).size(); ++i) full.members.push_back(i);
  SparseVector residual = meet(state, complement(ante, full));
  return join(residual, cons);
}

BigRat plausibility(const SparseVector& v,
                    const std::optional<std::map<uint32_t, BigRat>>& p) {
  size_t n = v.universe()->delta_table(v.rank()).size();
  BigRat sum;
  if (!p) {
    BigRat w(1, static_cast<int64_t>(n));
    for (const auto& [idx, c] : v.entries()) sum += w * c;
    return sum;
  }
  BigRat total;
  for (const auto& [idx, mass] : *p) {
    if (mass.sign() < 0) throw not_a_probability("negative mass");
    if (idx >= n) throw not_a_probability("mass outside the space");
    total += mass;
  }
  if (total != BigRat(1)) throw not_a_probability("mass sums to " + total.to_string());
  for (const auto& [idx, mass] : *p) sum += mass * v.at(idx);
  return sum;
}

double unnorm_entropy(const SparseVector& v) {
  size_t n = v.universe()->delta_table(v.rank()).size();
  if (v.entries().size() != n) throw non_positive_entry();
  double sum = 0.0;
  for (const auto& [idx, c] : v.entries()) {
    if (c.sign() <= 0) throw non_positive_entry();
    double a = c.to_double();
    sum += a * (1.0 - std::log(a));
  }
  return sum;
}

SparseVector dagger_vector(const Universe& u, const FormulaPtr& f, int rank,
                           const BigRat& alpha) {
  return dagger_of(embed(u, f, rank, CoefficientScheme::Indicator), alpha);
}

SparseVector dagger_of(const SparseVector& v, const BigRat& alpha) {
  if (alpha.sign() <= 0) throw non_positive_entry();
  const Universe& u = *v.universe();
  SparseVector out(&u, v.rank());
  size_t n = u.delta_table(v.rank()).size();
  for (uint32_t i = 0; i < n; ++i)
    out.set(i, v.at(i).is_zero() ? alpha : BigRat(1));
  return out;
}

TheoryDimension theory_dimension(const Universe& u, const FormulaPtr& axioms, int rank) {
  TheoryDimension out;
  ConstituentSet support = u.dnf(axioms, rank);
  out.total = u.delta_table(rank).size();
  if (u.vocab().monadic()) {
    int bound = monadic_model_bound(u.vocab(), rank);
    uint64_t count = 0;
    for (uint32_t idx : support.members) {
      Constituent d = u.constituent_at(rank, idx);
      if (has_model(u.vocab(), u.to_formula(d), bound)) ++count;
    }
    out.exact = true;
    out.dimension = count;
    out.lower = count;
    out.upper = count;
    return out;
  }
  // Semi-decision: found models from a small search below, syntactic
  // refutations above.
  uint64_t found = 0, refuted = 0;
  for (uint32_t idx : support.members) {
    Constituent d = u.constituent_at(rank, idx);
    if (u.trivially_inconsistent(d)) {
      ++refuted;
      continue;
    }
    if (has_model(u.vocab(), u.to_formula(d), 3)) ++found;
  }
  out.exact = false;
  out.lower = found;
  out.upper = support.size() - refuted;
  return out;
}

}  // namespace folspace
