#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "folspace/constituents.hpp"
#include "folspace/model.hpp"
#include "folspace/vectorspace.hpp"

namespace folspace {

// Certificate for one normal-form member: how deep the expansion went and
// which syntactic rule closed each surviving branch.
struct RefutationBranch {
  uint32_t index = 0;
  int rank = 0;
  bool refuted = false;
  int resolved_depth = 0;  // expansion steps until every branch closed
  TiRule rule = TiRule::None;
  size_t expansions_examined = 0;
};

struct RefutationResult {
  bool refuted = false;
  int depth_used = 0;
  size_t dnf_size = 0;
  bool budget_hit = false;
  std::string diagnostic;
  std::vector<RefutationBranch> certificate;
};

// Sound refutation: true only when every normal-form member has all of its
// refinements trivially inconsistent within the depth budget. Enumeration
// overruns surface as refuted=false with a diagnostic.
RefutationResult refute(const Universe& u, const FormulaPtr& f, int rank, int depth);

// Orthogonal basis with a satisfiability valuation and a component
// classifier. The standard basis is the constituent basis itself; any
// orthogonal vector family may stand in, classified by support overlap.
struct ComponentProofSystem {
  const Universe* uni = nullptr;
  int rank = 0;
  bool standard = true;
  std::vector<SparseVector> basis;      // non-standard only
  std::vector<uint8_t> valuation;       // one bit per component
  // Optional classifier override; the default is normal-form membership on
  // the standard basis and support overlap otherwise.
  std::function<int(const FormulaPtr&, size_t)> classifier;

  size_t component_count() const {
    return standard ? uni->delta_table(rank).size() : basis.size();
  }
};

// Valuation from the bounded model-search oracle (monadic vocabularies),
// standard classifier.
ComponentProofSystem ground_truth_system(const Universe& u, int rank);

struct ComponentProofBits {
  std::vector<uint8_t> tau;
  std::vector<uint8_t> chi;
  bool value = false;  // conjunction over all components of tau & chi
};

ComponentProofBits component_proof(const FormulaPtr& f, const ComponentProofSystem& sys);

// E_V = sum |tau_hat - tau|, E_f = sum |chi_hat - chi| on the sentence.
std::pair<uint64_t, uint64_t> proof_errors(const ComponentProofSystem& hat,
                                           const ComponentProofSystem& ground,
                                           const FormulaPtr& f);

enum class ComponentStatus { KnownZero, KnownOne, Unknown };
enum class ZeroReason { NotInSupport, Refuted };

struct SandwichComponent {
  ComponentStatus status = ComponentStatus::Unknown;
  ZeroReason zero_reason = ZeroReason::NotInSupport;
  int model_witness = -1;  // index into the supplied model list
};

struct SandwichProof {
  int rank = 0;
  std::vector<SandwichComponent> components;
  size_t known_one = 0, known_zero = 0, unknown = 0;
};

// Per-constituent resolution of a sentence: outside the support is zero;
// refutation closes a component from below; a model checking true closes it
// from above; otherwise unknown. Adding models or depth never flips a
// Known status.
SandwichProof sandwich(const Universe& u, const FormulaPtr& f, int rank, int refute_depth,
                       const std::vector<FiniteModel>& models);

}  // namespace folspace
