#include "folspace/prover.hpp"

#include <algorithm>

#include "folspace/errors.hpp"

namespace folspace {

namespace {

struct BranchOutcome {
  bool refuted = false;
  int depth = 0;
  TiRule rule = TiRule::None;
  size_t examined = 0;
  bool budget_hit = false;
};

// Depth-first refinement with pruning: a branch closes as soon as a
// trivially inconsistent constituent appears, so only live branches expand.
BranchOutcome refute_branch(const Universe& u, const Constituent& d, int budget) {
  BranchOutcome out;
  TiRule rule = u.ti_rule(d);
  if (rule != TiRule::None) {
    out.refuted = true;
    out.rule = rule;
    return out;
  }
  if (budget <= 0) return out;
  ConstituentSet children;
  try {
    children = u.expand(d, 1);
  } catch (const budget_exceeded&) {
    out.budget_hit = true;
    return out;
  }
  out.examined = children.size();
  int deepest = 0;
  for (uint32_t idx : children.members) {
    BranchOutcome sub = refute_branch(u, u.constituent_at(d.rank() + 1, idx), budget - 1);
    out.examined += sub.examined;
    out.budget_hit = out.budget_hit || sub.budget_hit;
    if (!sub.refuted) return out;  // a live refinement survives
    deepest = std::max(deepest, sub.depth);
  }
  out.refuted = true;
  out.depth = 1 + deepest;
  return out;
}

}  // namespace

RefutationResult refute(const Universe& u, const FormulaPtr& f, int rank, int depth) {
  RefutationResult result;
  ConstituentSet support;
  try {
    support = u.dnf(f, rank);
  } catch (const budget_exceeded& e) {
    result.budget_hit = true;
    result.diagnostic = e.what();
    return result;
  }
  result.dnf_size = support.size();
  if (support.members.empty()) {
    result.refuted = true;
    return result;
  }
  result.refuted = true;
  for (uint32_t idx : support.members) {
    BranchOutcome out = refute_branch(u, u.constituent_at(rank, idx), depth);
    RefutationBranch branch;
    branch.index = idx;
    branch.rank = rank;
    branch.refuted = out.refuted;
    branch.resolved_depth = out.depth;
    branch.rule = out.rule;
    branch.expansions_examined = out.examined;
    result.certificate.push_back(branch);
    result.budget_hit = result.budget_hit || out.budget_hit;
    if (out.refuted)
      result.depth_used = std::max(result.depth_used, out.depth);
    else
      result.refuted = false;
  }
  if (!result.refuted && result.budget_hit)
    result.diagnostic = "expansion budget exhausted before every branch closed";
  return result;
}

ComponentProofSystem ground_truth_system(const Universe& u, int rank) {
  if (!u.vocab().monadic())
    throw error("ground-truth valuation requires a monadic vocabulary");
  ComponentProofSystem sys;
  sys.uni = &u;
  sys.rank = rank;
  sys.standard = true;
  int bound = monadic_model_bound(u.vocab(), rank);
  const auto& table = u.delta_table(rank);
  for (uint32_t i = 0; i < table.size(); ++i) {
    Constituent d = u.constituent_at(rank, i);
    sys.valuation.push_back(has_model(u.vocab(), u.to_formula(d), bound) ? 1 : 0);
  }
  return sys;
}

ComponentProofBits component_proof(const FormulaPtr& f, const ComponentProofSystem& sys) {
  const Universe& u = *sys.uni;
  if (quantifier_rank(f) > sys.rank) throw basis_mismatch("formula rank exceeds basis rank");
  ComponentProofBits bits;
  size_t n = sys.component_count();
  if (sys.classifier) {
    for (size_t i = 0; i < n; ++i) {
      bits.tau.push_back(sys.valuation[i]);
      bits.chi.push_back(sys.classifier(f, i) ? 1 : 0);
    }
  } else if (sys.standard) {
    ConstituentSet support = u.dnf(f, sys.rank);
    for (size_t i = 0; i < n; ++i) {
      bits.tau.push_back(sys.valuation[i]);
      bits.chi.push_back(support.contains(static_cast<uint32_t>(i)) ? 1 : 0);
    }
  } else {
    SparseVector fv = embed(u, f, sys.rank, CoefficientScheme::Indicator);
    for (size_t i = 0; i < sys.basis.size(); ++i) {
      bits.tau.push_back(sys.valuation[i]);
      bits.chi.push_back(meet(sys.basis[i], fv).is_zero() ? 0 : 1);
    }
  }
  bits.value = true;
  for (size_t i = 0; i < bits.tau.size(); ++i)
    if (!(bits.tau[i] && bits.chi[i])) bits.value = false;
  return bits;
}

std::pair<uint64_t, uint64_t> proof_errors(const ComponentProofSystem& hat,
                                           const ComponentProofSystem& ground,
                                           const FormulaPtr& f) {
  if (hat.uni != ground.uni || hat.rank != ground.rank ||
      hat.component_count() != ground.component_count())
    throw basis_mismatch("component systems disagree on the basis");
  ComponentProofBits a = component_proof(f, hat);
  ComponentProofBits b = component_proof(f, ground);
  uint64_t ev = 0, ef = 0;
  for (size_t i = 0; i < a.tau.size(); ++i) {
    ev += a.tau[i] != b.tau[i] ? 1 : 0;
    ef += a.chi[i] != b.chi[i] ? 1 : 0;
  }
  return {ev, ef};
}

SandwichProof sandwich(const Universe& u, const FormulaPtr& f, int rank, int refute_depth,
                       const std::vector<FiniteModel>& models) {
  SandwichProof proof;
  proof.rank = rank;
  ConstituentSet support = u.dnf(f, rank);
  const auto& table = u.delta_table(rank);
  for (uint32_t i = 0; i < table.size(); ++i) {
    SandwichComponent comp;
    if (!support.contains(i)) {
      comp.status = ComponentStatus::KnownZero;
      comp.zero_reason = ZeroReason::NotInSupport;
    } else {
      Constituent d = u.constituent_at(rank, i);
      FormulaPtr df = u.to_formula(d);
      RefutationResult ref = refute(u, df, rank, refute_depth);
      if (ref.refuted) {
        comp.status = ComponentStatus::KnownZero;
        comp.zero_reason = ZeroReason::Refuted;
      } else {
        for (size_t m = 0; m < models.size(); ++m) {
          if (check(models[m], df)) {
            comp.status = ComponentStatus::KnownOne;
            comp.model_witness = static_cast<int>(m);
            break;
          }
        }
      }
    }
    switch (comp.status) {
      case ComponentStatus::KnownOne: ++proof.known_one; break;
      case ComponentStatus::KnownZero: ++proof.known_zero; break;
      case ComponentStatus::Unknown: ++proof.unknown; break;
    }
    proof.components.push_back(comp);
  }
  return proof;
}

}  // namespace folspace
