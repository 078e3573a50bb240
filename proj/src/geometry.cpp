#include "folspace/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "folspace/errors.hpp"

namespace folspace {

Hypercube constituent_cube(const Universe& u, int rank,
                           const std::function<int8_t(uint32_t)>& label_of) {
  const auto& table = u.delta_table(rank);
  size_t layer = u.gamma_table(rank - 1, 1).size();
  if (layer > 24) throw budget_exceeded(std::to_string(layer) + "-dimensional cube");
  Hypercube c;
  c.dimension = static_cast<int>(layer);
  c.labels.assign(uint64_t(1) << layer, 0);
  for (uint32_t i = 0; i < table.size(); ++i)
    c.labels[vertex_of_constituent(u, rank, i)] = label_of(i);
  return c;
}

uint64_t vertex_of_constituent(const Universe& u, int rank, uint32_t index) {
  std::string bits = u.constituent_to_bits(u.constituent_at(rank, index));
  uint64_t v = 0;
  for (char b : bits) v = (v << 1) | (b == '1' ? 1u : 0u);
  return v;
}

uint32_t constituent_of_vertex(const Universe& u, int rank, uint64_t vertex) {
  size_t layer = u.gamma_table(rank - 1, 1).size();
  std::string bits(layer, '0');
  for (size_t i = 0; i < layer; ++i)
    if ((vertex >> (layer - 1 - i)) & 1) bits[i] = '1';
  auto idx = u.find_constituent_index(u.bits_to_constituent(bits, rank));
  return static_cast<uint32_t>(*idx);
}

uint64_t boundary_count_serial(const Hypercube& c, int coord) {
  uint64_t n = uint64_t(1) << c.dimension;
  uint64_t flip = uint64_t(1) << (c.dimension - 1 - coord);
  uint64_t count = 0;
  for (uint64_t x = 0; x < n; ++x)
    if (c.labels[x] != c.labels[x ^ flip]) ++count;
  return count;
}

uint64_t boundary_count(const Hypercube& c, int coord, int threads) {
  if (threads <= 1) return boundary_count_serial(c, coord);
  int64_t n = int64_t(1) << c.dimension;
  uint64_t flip = uint64_t(1) << (c.dimension - 1 - coord);
  uint64_t count = 0;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : count)
#endif
  for (int64_t x = 0; x < n; ++x)
    if (c.labels[x] != c.labels[x ^ static_cast<int64_t>(flip)]) ++count;
  return count;
}

BigRat influence(const Hypercube& c, int coord, int threads) {
  if (coord < 0 || coord >= c.dimension) throw error("coordinate out of range");
  return BigRat(BigInt(1, BigNat(boundary_count(c, coord, threads))),
                BigNat::pow2(static_cast<uint64_t>(c.dimension)));
}

BigRat total_influence(const Hypercube& c, int threads) {
  BigRat sum;
  for (int i = 0; i < c.dimension; ++i) sum += influence(c, i, threads);
  return sum;
}

double influence_sampled(const std::function<int8_t(uint64_t)>& label_of, int dimension,
                         int coord, uint64_t samples, uint64_t seed) {
  uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  uint64_t mask = dimension >= 64 ? ~uint64_t(0) : (uint64_t(1) << dimension) - 1;
  uint64_t flip = uint64_t(1) << (dimension - 1 - coord);
  uint64_t hits = 0;
  for (uint64_t s = 0; s < samples; ++s) {
    uint64_t x = next() & mask;
    if (label_of(x) != label_of(x ^ flip)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

BigRat variance_from_labels(const Hypercube& c) {
  uint64_t n = uint64_t(1) << c.dimension;
  int64_t sum = 0;
  for (uint64_t x = 0; x < n; ++x) sum += c.labels[x];
  BigRat mean = BigRat(sum) / BigRat(static_cast<int64_t>(n));
  // labels are +-1 so the second moment is 1
  return BigRat(1) - mean * mean;
}

BigRat variance_of_valuation(uint64_t sat_count, uint64_t total) {
  if (total < 1 || sat_count > total)
    throw invalid_counts(std::to_string(sat_count) + " of " + std::to_string(total));
  BigRat t(BigInt(1, BigNat(total)), BigNat(1));
  BigRat d(BigInt(1, BigNat(sat_count)), BigNat(1));
  BigRat ratio = (t - BigRat(2) * d) / t;
  return BigRat(1) - ratio * ratio;
}

PoincareReport check_poincare(const Hypercube& c, int threads) {
  PoincareReport r;
  r.variance = variance_from_labels(c);
  for (int i = 0; i < c.dimension; ++i) {
    BigRat inf = influence(c, i, threads);
    r.total_influence += inf;
    if (inf > r.max_coordinate_influence) r.max_coordinate_influence = inf;
  }
  r.holds = r.variance <= r.total_influence;
  return r;
}

SparseVector truth_representation(const Universe& u, int rank, TruthKind kind,
                                  const std::vector<uint32_t>& satisfiable) {
  SparseVector v(&u, rank);
  if (kind == TruthKind::Uninformed) {
    size_t n = u.delta_table(rank).size();
    BigRat w(1, static_cast<int64_t>(n));
    for (uint32_t i = 0; i < n; ++i) v.set(i, w);
    return v;
  }
  if (satisfiable.empty()) throw invalid_counts("omniscient representation needs D >= 1");
  BigRat w(1, static_cast<int64_t>(satisfiable.size()));
  for (uint32_t i : satisfiable) v.set(i, w);
  return v;
}

SpanResult approx_span(const SparseVector& target, const std::vector<uint32_t>& box_coords,
                       const BigRat& box_height, int k) {
  SpanResult result;
  SparseVector iterate(target.universe(), target.rank());
  for (int step = 1; step <= k; ++step) {
    // Vertex minimizing <2(x - target), v> over subsets scaled by the box
    // height: include a coordinate exactly when the gradient is <= 0 there.
    std::vector<uint32_t> chosen;
    SparseVector vertex(target.universe(), target.rank());
    for (uint32_t i : box_coords) {
      if (iterate.at(i) <= target.at(i)) {
        chosen.push_back(i);
        vertex.set(i, box_height);
      }
    }
    // Running average keeps the iterate an average of chosen vertices.
    BigRat keep(step - 1, step), add(1, step);
    SparseVector next(target.universe(), target.rank());
    for (const auto& [idx, c] : iterate.entries()) next.set(idx, c * keep);
    for (const auto& [idx, c] : vertex.entries()) next.set(idx, next.at(idx) + c * add);
    iterate = std::move(next);
    result.subsets.push_back(std::move(chosen));
  }
  SparseVector diff(target.universe(), target.rank());
  for (const auto& [idx, c] : target.entries()) diff.set(idx, c - iterate.at(idx));
  for (const auto& [idx, c] : iterate.entries())
    if (!target.entries().count(idx)) diff.set(idx, -c);
  result.error_sq = inner(diff, diff);
  result.error = std::sqrt(result.error_sq.to_double());
  if (k >= 1 && !box_coords.empty()) {
    result.bound_defined = true;
    result.bound_sq = BigRat(2) / (BigRat(k) * BigRat(static_cast<int64_t>(box_coords.size())));
    result.bound = std::sqrt(result.bound_sq.to_double());
    result.within_bound = result.error_sq <= result.bound_sq;
  }
  return result;
}

ModelSpanReport model_span_report(const Universe& u, const FormulaPtr& f, int rank,
                                  const std::vector<FiniteModel>& models,
                                  const std::vector<uint32_t>& satisfiable) {
  // Models must satisfy the sentence and pairwise distinct constituents.
  std::vector<uint32_t> classes;
  for (const auto& m : models) {
    if (!check(m, f)) throw models_not_distinct();
    auto idx = u.find_constituent_index(u.satisfying_constituent(m, rank));
    if (!idx) throw models_not_distinct();
    if (std::find(classes.begin(), classes.end(), *idx) != classes.end())
      throw models_not_distinct();
    classes.push_back(*idx);
  }
  ModelSpanReport report;
  report.model_count = models.size();
  SparseVector phi = embed(u, f, rank, CoefficientScheme::UniformOverDnf);
  size_t n = u.dnf(f, rank).size();
  size_t total = u.delta_table(rank).size();
  report.support_size = n;
  report.space_size = total;

  SparseVector tu = truth_representation(u, rank, TruthKind::Uninformed);
  SparseVector diff(&u, rank);
  for (uint32_t i = 0; i < total; ++i) diff.set(i, tu.at(i) - phi.at(i));
  report.uninformed_distance_sq = inner(diff, diff);
  if (n > 0) {
    report.derived_closed_form_sq =
        BigRat(static_cast<int64_t>(total - n)) /
        (BigRat(static_cast<int64_t>(n)) * BigRat(static_cast<int64_t>(total)));
    double nn = static_cast<double>(n), tt = static_cast<double>(total);
    report.printed_bound_uninformed = std::sqrt((tt * tt - 2 * nn * tt + nn * nn) / (nn * tt * tt));
  }
  if (!satisfiable.empty() && n > 0) {
    SparseVector to = truth_representation(u, rank, TruthKind::Omniscient, satisfiable);
    SparseVector d2(&u, rank);
    for (uint32_t i = 0; i < total; ++i) d2.set(i, to.at(i) - phi.at(i));
    report.omniscient_distance_sq = inner(d2, d2);
    double dd = static_cast<double>(satisfiable.size());
    double kk = static_cast<double>(models.size());
    double nn = static_cast<double>(n);
    report.printed_bound_omniscient = std::sqrt((dd * (dd - 2 * kk) + kk * nn) / (nn * dd * dd));
  }
  return report;
}

}  // namespace folspace
