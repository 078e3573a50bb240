#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "folspace/logic.hpp"
#include "folspace/model.hpp"
#include "folspace/rational.hpp"

namespace folspace {

// Atomic formula over a positional context: predicate applied to context
// positions 0..ctx_len-1. Canonical order: predicate index, then argument
// tuple lexicographically.
struct CtxAtom {
  int pred;
  std::vector<int> args;
  bool operator<(const CtxAtom& o) const {
    return pred != o.pred ? pred < o.pred : args < o.args;
  }
  bool operator==(const CtxAtom& o) const { return pred == o.pred && args == o.args; }
};

struct Kind;
using KindPtr = std::shared_ptr<const Kind>;

// Attributive constituent of a given rank over a positional context: a sign
// for every atom mentioning the last context variable, plus a layer claim
// for every one-rank-lower kind of an additional individual. The layer is
// either exhaustive (dense) or lists the positive kinds with everything
// unlisted negative.
struct Kind {
  int rank = 0;
  int ctx_len = 0;
  std::vector<bool> base;          // signs over B[ctx_len]
  bool dense = true;
  std::vector<KindPtr> positives;  // canonically sorted, deduplicated
  bool sign_conflict = false;      // contradictory atom signs seen by the normalizer
};

// Constituent: head signs over the atoms not mentioning the last context
// variable, plus the attributive part. For sentences (empty context) the
// head is empty and the constituent is its attributive part.
struct Constituent {
  std::vector<bool> head;
  KindPtr attr;

  int rank() const { return attr->rank; }
  int ctx_len() const { return attr->ctx_len; }
};

// Canonical total order: positive signs sort first, atom signs before layer
// claims, layer compared through sorted positive sets.
int compare_kinds(const Kind& a, const Kind& b);
int compare_constituents(const Constituent& a, const Constituent& b);
inline bool kinds_equal(const KindPtr& a, const KindPtr& b) {
  return a == b || compare_kinds(*a, *b) == 0;
}
inline bool constituents_equal(const Constituent& a, const Constituent& b) {
  return compare_constituents(a, b) == 0;
}

// Set of same-rank sentence constituents, identified by canonical indices.
struct ConstituentSet {
  int rank = 0;
  std::vector<uint32_t> members;  // sorted ascending

  bool contains(uint32_t idx) const;
  size_t size() const { return members.size(); }
};

enum class TiRule { None, EmptyTopLayer, BaseSignConflict, LayerIncoherent, InconsistentPositive };

std::string ti_rule_name(TiRule r);

// Signed layer claims of a constituent (its set representation). Rank-0
// constituents are represented by the single claim "top".
struct SetRepresentation {
  bool top = false;
  std::vector<std::pair<bool, KindPtr>> claims;  // (sign, kind), canonical kind order
  bool rest_negative = false;                    // positives listed, all others negative
};

bool set_representations_equal(const SetRepresentation& a, const SetRepresentation& b);

struct UniverseOptions {
  uint64_t enumeration_budget = uint64_t(1) << 20;  // max elements to materialize
  uint64_t count_bit_cap = uint64_t(1) << 24;       // max bit length of exact counts
  int threads = 1;
};

// All constituent machinery for one vocabulary: atom tables, kind
// enumeration, exact counting, evaluation, classification, expansion,
// prefixes, and trivial inconsistency. Tables are cached; queries after
// warm-up are read-only and safe to share across threads.
class Universe {
 public:
  explicit Universe(Vocabulary vocab, UniverseOptions opts = {});

  const Vocabulary& vocab() const { return vocab_; }
  const UniverseOptions& options() const { return opts_; }
  void set_threads(int n) { opts_.threads = n < 1 ? 1 : n; }

  // Materializes every cache a sweep up to max_rank can touch (atom tables,
  // counts, kind tables within budget). Afterwards all queries on those
  // ranks are read-only and safe to share across threads.
  void warm(int max_rank) const;
  // Additionally memoizes the inconsistency check for every table
  // constituent, for parallel flows that refute.
  void warm_inconsistency(int max_rank) const;

  // Atom tables in canonical order.
  const std::vector<CtxAtom>& atoms(int ctx_len) const;        // A[ctx_len]
  const std::vector<CtxAtom>& base_atoms(int ctx_len) const;   // B[ctx_len]
  int atom_index(int ctx_len, const CtxAtom& a) const;
  int base_atom_index(int ctx_len, const CtxAtom& a) const;

  // Exact counts from the rank recurrence; throws result_too_large past the
  // configured bit cap.
  BigNat gamma_count(int rank, int ctx_len) const;
  BigNat delta_count(int rank, int ctx_len) const;

  // Materialized kind table for Gamma^(rank)[ctx], canonical order; throws
  // budget_exceeded when the table would exceed the element budget.
  const std::vector<KindPtr>& gamma_table(int rank, int ctx_len) const;

  // Sentence constituents Delta^(rank) (no head for the empty context).
  const std::vector<KindPtr>& delta_table(int rank) const { return gamma_table(rank, 0); }
  Constituent constituent_at(int rank, uint32_t index) const;
  std::optional<uint64_t> find_kind_index(const KindPtr& k) const;
  std::optional<uint32_t> find_constituent_index(const Constituent& d) const;

  // Full constituent enumeration for an arbitrary context.
  std::vector<Constituent> enumerate_constituents(int rank, int ctx_len) const;

  // Structural truth of a formula in the world a constituent describes.
  // Preconditions: quantifier_rank(f) <= rank, free variables of f within
  // ctx_names (positional context names, defaults to x1..xk).
  bool eval(const Constituent& d, const FormulaPtr& f,
            const std::vector<std::string>& ctx_names = {}) const;

  // Distributive normal form: the rank-r constituents whose worlds make the
  // sentence true. Uses the parallel sweep when options().threads > 1.
  ConstituentSet dnf(const FormulaPtr& f, int rank) const;
  ConstituentSet dnf_serial(const FormulaPtr& f, int rank) const;

  // Expansion to rank + s; expand(d, 0) == {d}.
  ConstituentSet expand(const Constituent& d, int s) const;

  // The unique constituent the model satisfies at this rank (positives-only
  // layer representation built from realized kinds).
  Constituent satisfying_constituent(const FiniteModel& m, int rank,
                                     const std::vector<int>& env = {}) const;

  // Deepest-quantifier-layer removal; throws rank_zero at rank 0.
  Constituent remove_top_layer(const Constituent& d) const;
  KindPtr truncate_kind(const KindPtr& k) const;

  // lo is the one-rank-shallower prefix of hi.
  bool is_prefix(const Constituent& lo, const Constituent& hi) const;

  SetRepresentation set_representation(const Constituent& d) const;

  // Sound syntactic unsatisfiability test; never true on a constituent with
  // a finite model.
  bool trivially_inconsistent(const Constituent& d) const;
  TiRule ti_rule(const Constituent& d) const;

  // Display form with exclusive quantifiers; positions print as x1, x2, ...
  FormulaPtr to_formula(const Constituent& d) const;
  FormulaPtr kind_formula(const KindPtr& k) const;

  // Reads a constituent back from a display-form sentence. Unmentioned
  // atoms in a kind description default to negative; unlisted kinds are
  // negative; contradictory atom signs are recorded for the
  // trivial-inconsistency check rather than rejected.
  Constituent constituent_from_formula(const FormulaPtr& f, int rank) const;

  // Bit-string identification for dense-enumerable spaces: bit i is the
  // layer sign of the i-th canonical kind.
  std::string constituent_to_bits(const Constituent& d) const;
  Constituent bits_to_constituent(const std::string& bits, int rank) const;
  std::string constituent_id(int rank, uint32_t index) const;  // bits as hex

 private:
  struct AtomTables {
    std::vector<CtxAtom> all;            // A[ctx]
    std::vector<CtxAtom> base;           // B[ctx]
    std::map<CtxAtom, int> all_index;
    std::map<CtxAtom, int> base_index;
    // For each atom of A[ctx]: (true, index into B[ctx]) if it mentions the
    // last position, else (false, index into A[ctx-1]).
    std::vector<std::pair<bool, int>> split;
    // Atom index arithmetic: index = pred_offset[pred] + positional value of
    // the argument tuple in base ctx_len.
    std::vector<size_t> pred_offset;
  };

  const AtomTables& atom_tables(int ctx_len) const;
  struct EvalScratch {
    std::vector<std::vector<bool>> signs;  // one reusable buffer per depth
  };
  // Variable bindings as a shadowing stack; lookups scan newest-first.
  struct EvalEnv {
    std::vector<std::pair<const std::string*, int>> binds;
    const int* lookup(const std::string& v) const {
      for (auto it = binds.rbegin(); it != binds.rend(); ++it)
        if (*it->first == v) return &it->second;
      return nullptr;
    }
  };
  bool eval_rec(const FormulaPtr& f, EvalEnv& env, const std::vector<bool>& atom_signs,
                const Kind* kind, int ctx_len, EvalScratch& scratch) const;
  bool eval_exclusive(bool existential, const std::string& var, const FormulaPtr& body,
                      EvalEnv& env, const std::vector<bool>& atom_signs, const Kind* kind,
                      int ctx_len, EvalScratch& scratch) const;
  KindPtr kind_of(const FiniteModel& m, const std::vector<int>& env, int rank) const;
  TiRule ti_kind(const Kind& k) const;
  std::vector<bool> restricted_base(const Kind& sub) const;

  Vocabulary vocab_;
  UniverseOptions opts_;
  mutable std::map<int, AtomTables> atom_tables_;
  mutable std::map<std::pair<int, int>, std::vector<KindPtr>> gamma_tables_;
  mutable std::map<std::pair<int, int>, BigNat> gamma_counts_;
  mutable std::map<const Kind*, TiRule> ti_memo_;
  mutable int warmed_tables_ = -1;
  mutable int warmed_ti_ = -1;
};

// Positive-first index helpers: a sign vector maps to its rank in the
// canonical order (all-positive first), most significant sign first.
uint64_t signs_to_index(const std::vector<bool>& signs);
std::vector<bool> index_to_signs(uint64_t index, size_t width);
std::string signs_to_bitstring(const std::vector<bool>& signs);

}  // namespace folspace
