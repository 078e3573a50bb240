#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folspace/model.hpp"
#include "folspace/prover.hpp"
#include "folspace/rational.hpp"
#include "folspace/reftree.hpp"

namespace folspace {

// Refuter behavior inside knowledge estimation. With literal_reading the
// matrix entry is forced to 1 when the refuter refutes the implication
// formula itself; the default establishes the implication by refuting
// antecedent-and-not-consequent.
struct RefuterConfig {
  bool enabled = true;
  int depth = 1;
  bool literal_reading = false;
};

// Implication-score matrix over [phi_0, phi_1, ..., phi_L] where phi_0 is
// the conjunction of the sentences known to be false. Row 0 and the
// diagonal are 1; every entry lies in [0, 1].
struct KnowledgeMatrix {
  const Universe* uni = nullptr;
  int rank = 0;
  std::vector<FormulaPtr> sentences;
  std::vector<FiniteModel> models;
  BigRat alpha;
  RefuterConfig refuter;
  std::vector<std::vector<BigRat>> entries;

  size_t conjecture_count() const { return sentences.size() - 1; }
};

KnowledgeMatrix build_knowledge(const Universe& u, const std::vector<FormulaPtr>& false_sentences,
                                const std::vector<FormulaPtr>& conjectures,
                                const std::vector<FiniteModel>& models, const BigRat& alpha,
                                const RefuterConfig& refuter, int rank);
// Serial reference for the parallel entry fill.
KnowledgeMatrix build_knowledge_serial(const Universe& u,
                                       const std::vector<FormulaPtr>& false_sentences,
                                       const std::vector<FormulaPtr>& conjectures,
                                       const std::vector<FiniteModel>& models,
                                       const BigRat& alpha, const RefuterConfig& refuter,
                                       int rank);

// B(phi_i) = 1 - N_i0 for every row.
std::vector<BigRat> beliefs(const KnowledgeMatrix& k);

// Belief of a single constituent enrolled against the agent's knowledge:
// zero when refuted, otherwise 1 - |models refuting it|/(M + alpha).
BigRat constituent_belief(const Universe& u, const Constituent& d,
                          const std::vector<FiniteModel>& models, const BigRat& alpha,
                          const RefuterConfig& refuter);

// Probability measure on the refinement tree: each node's mass splits among
// its children proportionally to their beliefs, defaulting to an even split
// when every child belief vanishes.
TreeMeasure belief_measure(const RefinementTree& t,
                           const std::vector<std::vector<BigRat>>& node_beliefs);

// Node beliefs derived from an agent's models and refuter.
std::vector<std::vector<BigRat>> agent_node_beliefs(const RefinementTree& t,
                                                    const std::vector<FiniteModel>& models,
                                                    const BigRat& alpha,
                                                    const RefuterConfig& refuter);

struct ConjectureScore {
  size_t sentence_index;  // 1..L
  double score;
};

// Deterministic spectral ranking of the conjecture block: column
// mean-centering, one-sided Jacobi singular decomposition, each conjecture
// scored by its squared right-vector loadings weighted by the singular
// values. Descending order (exploitation first); ties by sentence index.
std::vector<ConjectureScore> rank_conjectures(const KnowledgeMatrix& k);

struct ConjecturingBasisReport {
  size_t sentence_count = 0;
  size_t gram_rank = 0;       // independent embedded sentences
  bool independent = false;   // rank equals sentence count
  bool contains_top = false;  // the all-ones vector lies in the span
};

ConjecturingBasisReport conjecturing_basis_report(const KnowledgeMatrix& k, int rank);

}  // namespace folspace
