#include "folspace/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "folspace/errors.hpp"
#include "folspace/vectorspace.hpp"

namespace folspace {

namespace {

// N_ij for i, j >= 1, i != j.
BigRat implication_score(const Universe& u, const FormulaPtr& from, const FormulaPtr& to,
                         const std::vector<FiniteModel>& models, const BigRat& alpha,
                         const RefuterConfig& refuter, int rank) {
  FormulaPtr implication = Formula::implies(from, to);
  if (refuter.enabled) {
    bool established;
    if (refuter.literal_reading) {
      established = refute(u, implication, rank, refuter.depth).refuted;
    } else {
      established = refute(u, Formula::land(from, Formula::lnot(to)), rank, refuter.depth).refuted;
    }
    if (established) return BigRat(1);
  }
  int64_t hits = 0;
  for (const auto& m : models)
    if (check(m, implication)) ++hits;
  return BigRat(hits) / (BigRat(static_cast<int64_t>(models.size())) + alpha);
}

KnowledgeMatrix build_common(const Universe& u, const std::vector<FormulaPtr>& false_sentences,
                             const std::vector<FormulaPtr>& conjectures,
                             const std::vector<FiniteModel>& models, const BigRat& alpha,
                             const RefuterConfig& refuter, int rank, bool parallel) {
  if (alpha.sign() <= 0) throw error("smoothing alpha must be positive");
  KnowledgeMatrix k;
  k.uni = &u;
  k.rank = rank;
  k.models = models;
  k.alpha = alpha;
  k.refuter = refuter;
  k.sentences.push_back(false_sentences.empty() ? Formula::bottom()
                                                : Formula::conj(false_sentences));
  for (const auto& c : conjectures) k.sentences.push_back(c);
  size_t n = k.sentences.size();
  for (const auto& s : k.sentences)
    if (quantifier_rank(s) > rank) throw rank_too_high("knowledge sentence exceeds rank budget");

  k.entries.assign(n, std::vector<BigRat>(n));
  // Row 0 and the diagonal are pinned; the rest are independent work items.
  std::vector<std::pair<size_t, size_t>> work;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == 0 || i == j)
        k.entries[i][j] = BigRat(1);
      else
        work.emplace_back(i, j);
    }
  int threads = parallel ? u.options().threads : 1;
  if (threads > 1) {
    u.warm_inconsistency(rank + (refuter.enabled ? refuter.depth : 0));
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(dynamic)
#endif
    for (int64_t w = 0; w < static_cast<int64_t>(work.size()); ++w) {
      auto [i, j] = work[w];
      k.entries[i][j] =
          implication_score(u, k.sentences[i], k.sentences[j], models, alpha, refuter, rank);
    }
  } else {
    for (auto [i, j] : work)
      k.entries[i][j] =
          implication_score(u, k.sentences[i], k.sentences[j], models, alpha, refuter, rank);
  }
  return k;
}

}  // namespace

KnowledgeMatrix build_knowledge(const Universe& u, const std::vector<FormulaPtr>& false_sentences,
                                const std::vector<FormulaPtr>& conjectures,
                                const std::vector<FiniteModel>& models, const BigRat& alpha,
                                const RefuterConfig& refuter, int rank) {
  return build_common(u, false_sentences, conjectures, models, alpha, refuter, rank, true);
}

KnowledgeMatrix build_knowledge_serial(const Universe& u,
                                       const std::vector<FormulaPtr>& false_sentences,
                                       const std::vector<FormulaPtr>& conjectures,
                                       const std::vector<FiniteModel>& models,
                                       const BigRat& alpha, const RefuterConfig& refuter,
                                       int rank) {
  return build_common(u, false_sentences, conjectures, models, alpha, refuter, rank, false);
}

std::vector<BigRat> beliefs(const KnowledgeMatrix& k) {
  std::vector<BigRat> out;
  for (size_t i = 0; i < k.sentences.size(); ++i) out.push_back(BigRat(1) - k.entries[i][0]);
  return out;
}

BigRat constituent_belief(const Universe& u, const Constituent& d,
                          const std::vector<FiniteModel>& models, const BigRat& alpha,
                          const RefuterConfig& refuter) {
  FormulaPtr df = u.to_formula(d);
  if (refuter.enabled && refute(u, df, d.rank(), refuter.depth).refuted) return BigRat(0);
  int64_t refuting = 0;
  for (const auto& m : models)
    if (!check(m, df)) ++refuting;
  return BigRat(1) - BigRat(refuting) / (BigRat(static_cast<int64_t>(models.size())) + alpha);
}

TreeMeasure belief_measure(const RefinementTree& t,
                           const std::vector<std::vector<BigRat>>& node_beliefs) {
  for (const auto& level : node_beliefs)
    for (const auto& b : level)
      if (b.sign() < 0) throw negative_belief();
  TreeMeasure m;
  m.tree = &t;
  m.value.resize(t.max_rank + 1);
  m.value[0].assign(t.level_size(0), BigRat(1));
  for (int r = 0; r < t.max_rank; ++r) {
    m.value[r + 1].assign(t.level_size(r + 1), BigRat());
    for (uint32_t p = 0; p < t.level_size(r); ++p) {
      const auto& kids = t.children[r][p];
      if (kids.empty()) continue;
      if (m.value[r][p].is_zero()) continue;  // children inherit zero
      BigRat total;
      for (uint32_t c : kids) total += node_beliefs[r + 1][c];
      if (total.is_zero()) {
        // Even split keeps the measure total and additive.
        BigRat share = m.value[r][p] / BigRat(static_cast<int64_t>(kids.size()));
        for (uint32_t c : kids) m.value[r + 1][c] = share;
      } else {
        for (uint32_t c : kids)
          m.value[r + 1][c] = m.value[r][p] * node_beliefs[r + 1][c] / total;
      }
    }
  }
  return m;
}

std::vector<std::vector<BigRat>> agent_node_beliefs(const RefinementTree& t,
                                                    const std::vector<FiniteModel>& models,
                                                    const BigRat& alpha,
                                                    const RefuterConfig& refuter) {
  std::vector<std::vector<BigRat>> out(t.max_rank + 1);
  for (int r = 0; r <= t.max_rank; ++r) {
    out[r].resize(t.level_size(r));
    for (uint32_t i = 0; i < t.level_size(r); ++i)
      out[r][i] =
          constituent_belief(*t.uni, t.uni->constituent_at(r, i), models, alpha, refuter);
  }
  return out;
}

// ------------------------------------------------------------------ ranking

namespace {

// One-sided Jacobi: orthogonalize the columns of a by right rotations,
// accumulating them in v. Column norms become the singular values.
void jacobi_svd(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& v) {
  size_t n = a.size();
  v.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  auto col_dot = [&](size_t p, size_t q) {
    double s = 0;
    for (size_t r = 0; r < n; ++r) s += a[r][p] * a[r][q];
    return s;
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (size_t p = 0; p + 1 < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        double apq = col_dot(p, q);
        double app = col_dot(p, p), aqq = col_dot(q, q);
        off += apq * apq;
        if (std::abs(apq) < 1e-15 * std::sqrt(app * aqq) || apq == 0.0) continue;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (size_t r = 0; r < n; ++r) {
          double ap = a[r][p], aq = a[r][q];
          a[r][p] = c * ap - s * aq;
          a[r][q] = s * ap + c * aq;
          double vp = v[r][p], vq = v[r][q];
          v[r][p] = c * vp - s * vq;
          v[r][q] = s * vp + c * vq;
        }
      }
    }
    if (off < 1e-28) break;
  }
}

}  // namespace

std::vector<ConjectureScore> rank_conjectures(const KnowledgeMatrix& k) {
  size_t L = k.conjecture_count();
  if (L < 1) throw error("ranking requires at least one conjecture");
  // Column mean-centered conjecture block in floating point.
  std::vector<std::vector<double>> a(L, std::vector<double>(L));
  for (size_t j = 1; j <= L; ++j) {
    double mean = 0;
    for (size_t i = 1; i <= L; ++i) mean += k.entries[i][j].to_double();
    mean /= static_cast<double>(L);
    for (size_t i = 1; i <= L; ++i) a[i - 1][j - 1] = k.entries[i][j].to_double() - mean;
  }
  std::vector<std::vector<double>> v;
  jacobi_svd(a, v);
  std::vector<double> sigma(L, 0.0);
  for (size_t c = 0; c < L; ++c) {
    double s = 0;
    for (size_t r = 0; r < L; ++r) s += a[r][c] * a[r][c];
    sigma[c] = std::sqrt(s);
  }
  std::vector<ConjectureScore> scores;
  for (size_t j = 0; j < L; ++j) {
    double s = 0;
    for (size_t c = 0; c < L; ++c) s += sigma[c] * v[j][c] * v[j][c];
    scores.push_back({j + 1, s});
  }
  std::stable_sort(scores.begin(), scores.end(), [](const auto& x, const auto& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.sentence_index < y.sentence_index;
  });
  return scores;
}

ConjecturingBasisReport conjecturing_basis_report(const KnowledgeMatrix& k, int rank) {
  ConjecturingBasisReport report;
  const Universe& u = *k.uni;
  std::vector<SparseVector> vectors;
  for (const auto& s : k.sentences)
    vectors.push_back(embed(u, s, rank, CoefficientScheme::Indicator));
  report.sentence_count = vectors.size();
  std::vector<SparseVector> basis = gram_schmidt(vectors);
  report.gram_rank = basis.size();
  report.independent = report.gram_rank == report.sentence_count;
  std::vector<SparseVector> with_top = vectors;
  with_top.push_back(embed(u, Formula::top(), rank, CoefficientScheme::Indicator));
  report.contains_top = gram_schmidt(with_top).size() == report.gram_rank;
  return report;
}

}  // namespace folspace
