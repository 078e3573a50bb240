#include "folspace/reftree.hpp"

#include <algorithm>

#include "folspace/errors.hpp"

namespace folspace {

RefinementTree build_tree(const Universe& u, int max_rank) {
  RefinementTree t;
  t.uni = &u;
  t.max_rank = max_rank;
  t.parent.resize(max_rank + 1);
  t.children.resize(max_rank + 1);
  for (int r = 0; r < max_rank; ++r)
    t.children[r].resize(u.delta_table(r).size());
  for (int r = 1; r <= max_rank; ++r) {
    const auto& table = u.delta_table(r);
    t.parent[r].resize(table.size());
    for (uint32_t i = 0; i < table.size(); ++i) {
      Constituent child = u.constituent_at(r, i);
      uint32_t parent_idx;
      auto prefix = u.find_constituent_index(u.remove_top_layer(child));
      if (prefix) {
        parent_idx = *prefix;
      } else {
        // No prefix: fall back to the lowest expansion parent, then to the
        // lowest constituent outright.
        std::optional<uint32_t> lowest;
        const auto& up = u.delta_table(r - 1);
        for (uint32_t p = 0; p < up.size(); ++p) {
          if (u.eval(child, u.to_formula(u.constituent_at(r - 1, p)))) {
            lowest = p;
            break;
          }
        }
        parent_idx = lowest.value_or(0);
      }
      t.parent[r][i] = parent_idx;
      t.children[r - 1][parent_idx].push_back(i);
    }
  }
  return t;
}

BasicOpen basic_open(const RefinementTree& t, const Constituent& d) {
  if (d.ctx_len() != 0) throw not_a_node("constituent has free variables");
  if (d.rank() > t.max_rank) throw not_a_node("rank beyond tree depth");
  auto idx = t.uni->find_constituent_index(d);
  if (!idx) throw not_a_node("constituent not found in the canonical table");
  return BasicOpen{&t, d.rank(), *idx};
}

std::vector<uint32_t> root_path(const BasicOpen& b) {
  std::vector<uint32_t> path(b.rank + 1);
  uint32_t cur = b.index;
  for (int r = b.rank; r >= 0; --r) {
    path[r] = cur;
    if (r > 0) cur = b.tree->parent[r][cur];
  }
  return path;
}

bool open_contains(const BasicOpen& a, const BasicOpen& b) {
  if (a.tree != b.tree) throw anchor_not_in_tree();
  if (a.rank > b.rank) return false;
  uint32_t cur = b.index;
  for (int r = b.rank; r > a.rank; --r) cur = b.tree->parent[r][cur];
  return cur == a.index;
}

bool opens_disjoint(const BasicOpen& a, const BasicOpen& b) {
  return !open_contains(a, b) && !open_contains(b, a);
}

const BigRat& TreeMeasure::at(const BasicOpen& b) const {
  if (b.tree != tree) throw anchor_not_in_tree();
  return value[b.rank][b.index];
}

TreeMeasure uniform_measure(const RefinementTree& t) {
  TreeMeasure m;
  m.tree = &t;
  m.value.resize(t.max_rank + 1);
  size_t roots = t.level_size(0);
  m.value[0].assign(roots, BigRat(1, static_cast<int64_t>(roots)));
  for (int r = 0; r < t.max_rank; ++r) {
    m.value[r + 1].assign(t.level_size(r + 1), BigRat());
    for (uint32_t p = 0; p < t.level_size(r); ++p) {
      const auto& kids = t.children[r][p];
      if (kids.empty()) continue;
      BigRat share = m.value[r][p] / BigRat(static_cast<int64_t>(kids.size()));
      for (uint32_t c : kids) m.value[r + 1][c] = share;
    }
  }
  return m;
}

BigRat literal_uniform_value(const Universe& u, int rank) {
  return BigRat(BigInt(1), BigNat(u.delta_table(rank).size()));
}

BigRat hilbert_inner(const RefinementTree& t, const TreeMeasure& m, const SimpleFunction& f,
                     const SimpleFunction& g) {
  BigRat sum;
  for (const auto& [a, ca] : f) {
    if (a.tree != &t) throw anchor_not_in_tree();
    for (const auto& [b, cb] : g) {
      if (b.tree != &t) throw anchor_not_in_tree();
      const BasicOpen& deeper = a.rank >= b.rank ? a : b;
      const BasicOpen& shallower = a.rank >= b.rank ? b : a;
      if (open_contains(shallower, deeper)) sum += ca * cb * m.at(deeper);
    }
  }
  return sum;
}

std::vector<SimpleFunction> orthogonalize_opens(const RefinementTree& t, const TreeMeasure& m,
                                                const std::vector<BasicOpen>& anchors) {
  std::vector<SimpleFunction> basis;
  for (const BasicOpen& a : anchors) {
    SimpleFunction residual{{a, BigRat(1)}};
    for (const SimpleFunction& b : basis) {
      BigRat denom = hilbert_inner(t, m, b, b);
      if (denom.is_zero()) continue;
      BigRat proj = hilbert_inner(t, m, residual, b) / denom;
      if (proj.is_zero()) continue;
      for (const auto& [open, coeff] : b) residual.emplace_back(open, -(proj * coeff));
    }
    // Canonicalize: merge duplicate anchors, drop zeros.
    std::map<BasicOpen, BigRat> merged;
    for (const auto& [open, coeff] : residual) merged[open] += coeff;
    SimpleFunction clean;
    for (const auto& [open, coeff] : merged)
      if (!coeff.is_zero()) clean.emplace_back(open, coeff);
    if (!clean.empty() && !hilbert_inner(t, m, clean, clean).is_zero())
      basis.push_back(std::move(clean));
  }
  return basis;
}

}  // namespace folspace
