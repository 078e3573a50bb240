#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "folspace/constituents.hpp"
#include "folspace/model.hpp"
#include "folspace/rational.hpp"
#include "folspace/vectorspace.hpp"

namespace folspace {

// Boolean hypercube with +-1 vertex labels. Vertices are bit-string values
// with coordinate 0 the most significant bit; labels.size() == 2^dimension.
struct Hypercube {
  int dimension = 0;
  std::vector<int8_t> labels;
};

// Rank-r constituents as cube vertices: the bit-string of layer signs. The
// label of a vertex is label_of applied to the canonical constituent index.
Hypercube constituent_cube(const Universe& u, int rank,
                           const std::function<int8_t(uint32_t)>& label_of);
uint64_t vertex_of_constituent(const Universe& u, int rank, uint32_t index);
uint32_t constituent_of_vertex(const Universe& u, int rank, uint64_t vertex);

// Fraction of vertices whose label flips with coordinate i; exact.
uint64_t boundary_count_serial(const Hypercube& c, int coord);
uint64_t boundary_count(const Hypercube& c, int coord, int threads);
BigRat influence(const Hypercube& c, int coord, int threads = 1);
BigRat total_influence(const Hypercube& c, int threads = 1);

// Seeded sampling estimate for cubes too large to sweep; approximate by
// construction and flagged as such by the caller.
double influence_sampled(const std::function<int8_t(uint64_t)>& label_of, int dimension,
                         int coord, uint64_t samples, uint64_t seed);

BigRat variance_from_labels(const Hypercube& c);
// Closed form from the satisfiable count: 1 - ((total - 2 sat)/total)^2.
BigRat variance_of_valuation(uint64_t sat_count, uint64_t total);

struct PoincareReport {
  BigRat variance;
  BigRat total_influence;
  BigRat max_coordinate_influence;
  bool holds = false;  // variance <= total influence
};

PoincareReport check_poincare(const Hypercube& c, int threads = 1);

enum class TruthKind { Uninformed, Omniscient };

// Uninformed: 1/|Delta| on every constituent. Omniscient: 1/D on the
// satisfiable ones.
SparseVector truth_representation(const Universe& u, int rank, TruthKind kind,
                                  const std::vector<uint32_t>& satisfiable = {});

struct SpanResult {
  std::vector<std::vector<uint32_t>> subsets;  // chosen vertex per step
  BigRat error_sq;
  double error = 0.0;
  bool bound_defined = false;
  BigRat bound_sq;
  double bound = 0.0;
  bool within_bound = false;
};

// Greedy conditional-gradient spanning: k steps over the scaled-subset box,
// each step the vertex minimizing the linearized distance, iterates kept as
// running averages. Exact rational error; bound_sq = 2/(k * box dimension).
SpanResult approx_span(const SparseVector& target, const std::vector<uint32_t>& box_coords,
                       const BigRat& box_height, int k);

struct ModelSpanReport {
  size_t model_count = 0;
  size_t support_size = 0;   // N = |dnf(f)|
  size_t space_size = 0;     // |Delta^(r)|
  BigRat uninformed_distance_sq;      // exact ||T_U - phi||^2
  BigRat derived_closed_form_sq;      // (|Delta|-N)/(N|Delta|), asserted equal
  double printed_bound_uninformed = 0.0;  // reported, not asserted
  std::optional<BigRat> omniscient_distance_sq;
  double printed_bound_omniscient = 0.0;  // reported, not asserted
};

// Distances from the truth representations to the uniformly weighted
// support of f, given pairwise constituent-distinct models of f.
ModelSpanReport model_span_report(const Universe& u, const FormulaPtr& f, int rank,
                                  const std::vector<FiniteModel>& models,
                                  const std::vector<uint32_t>& satisfiable = {});

}  // namespace folspace
