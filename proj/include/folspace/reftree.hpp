#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "folspace/constituents.hpp"
#include "folspace/rational.hpp"

namespace folspace {

// Ranked tree over all sentence constituents up to max_rank. Nodes at rank
// r are the canonical indices of Delta^(r); every node of positive rank has
// exactly one parent one rank up the other way.
struct RefinementTree {
  const Universe* uni = nullptr;
  int max_rank = 0;
  std::vector<std::vector<uint32_t>> parent;                // parent[r][i], r >= 1
  std::vector<std::vector<std::vector<uint32_t>>> children;  // children[r][i], r < max_rank

  size_t level_size(int rank) const { return uni->delta_table(rank).size(); }
};

// Edge construction: a prefix parent when one exists, otherwise the lowest
// canonical expansion parent, otherwise the lowest canonical constituent.
RefinementTree build_tree(const Universe& u, int max_rank);

struct BasicOpen {
  const RefinementTree* tree = nullptr;
  int rank = 0;
  uint32_t index = 0;

  bool operator<(const BasicOpen& o) const {
    return std::pair(rank, index) < std::pair(o.rank, o.index);
  }
  bool operator==(const BasicOpen& o) const {
    return tree == o.tree && rank == o.rank && index == o.index;
  }
};

BasicOpen basic_open(const RefinementTree& t, const Constituent& d);

// Root path of an anchor, ranks 0..rank.
std::vector<uint32_t> root_path(const BasicOpen& b);

// True when a's anchor lies on the root path of b (so B_b is inside B_a).
bool open_contains(const BasicOpen& a, const BasicOpen& b);
bool opens_disjoint(const BasicOpen& a, const BasicOpen& b);

// Nonnegative valuation on basic opens, additive across each node's
// children by construction.
struct TreeMeasure {
  const RefinementTree* tree = nullptr;
  std::vector<std::vector<BigRat>> value;  // value[r][i]

  const BigRat& at(const BasicOpen& b) const;
  const BigRat& at(int rank, uint32_t index) const { return value[rank][index]; }
};

// Splits each node's mass equally among its children, starting from
// 1/|Delta^(0)| at the root level.
TreeMeasure uniform_measure(const RefinementTree& t);

// The non-additive per-rank value 1/|Delta^(r)|, reported next to the
// uniform-split measure for comparison.
BigRat literal_uniform_value(const Universe& u, int rank);

// Finite linear combination of basic-open indicators.
using SimpleFunction = std::vector<std::pair<BasicOpen, BigRat>>;

// <f, g> under the measure: indicator pairs contribute the deeper anchor's
// mass when nested, nothing when disjoint.
BigRat hilbert_inner(const RefinementTree& t, const TreeMeasure& m, const SimpleFunction& f,
                     const SimpleFunction& g);

// Exact orthogonalization of basic-open indicators in the measure's inner
// product; dependent entries drop out.
std::vector<SimpleFunction> orthogonalize_opens(const RefinementTree& t, const TreeMeasure& m,
                                                const std::vector<BasicOpen>& anchors);

}  // namespace folspace
