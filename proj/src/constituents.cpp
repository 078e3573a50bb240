#include "folspace/constituents.hpp"

#include <algorithm>

#include "folspace/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace folspace {

// ---------------------------------------------------------------- helpers

uint64_t signs_to_index(const std::vector<bool>& signs) {
  uint64_t idx = 0;
  for (bool s : signs) idx = (idx << 1) | (s ? 0u : 1u);  // positive-first
  return idx;
}

std::vector<bool> index_to_signs(uint64_t index, size_t width) {
  std::vector<bool> s(width);
  for (size_t i = 0; i < width; ++i) s[i] = ((index >> (width - 1 - i)) & 1) == 0;
  return s;
}

std::string signs_to_bitstring(const std::vector<bool>& signs) {
  std::string out;
  out.reserve(signs.size());
  for (bool s : signs) out.push_back(s ? '1' : '0');
  return out;
}

int compare_kinds(const Kind& a, const Kind& b) {
  if (a.rank != b.rank) return a.rank < b.rank ? -1 : 1;
  if (a.ctx_len != b.ctx_len) return a.ctx_len < b.ctx_len ? -1 : 1;
  for (size_t i = 0; i < a.base.size(); ++i)
    if (a.base[i] != b.base[i]) return a.base[i] ? -1 : 1;
  if (a.rank == 0) return 0;
  // Earliest kind on which the layers disagree decides; the side claiming
  // it positively sorts first.
  size_t i = 0, j = 0;
  while (i < a.positives.size() && j < b.positives.size()) {
    int c = compare_kinds(*a.positives[i], *b.positives[j]);
    if (c == 0) {
      ++i;
      ++j;
    } else {
      return c < 0 ? -1 : 1;
    }
  }
  if (i < a.positives.size()) return -1;
  if (j < b.positives.size()) return 1;
  return 0;
}

int compare_constituents(const Constituent& a, const Constituent& b) {
  if (a.head.size() != b.head.size()) return a.head.size() < b.head.size() ? -1 : 1;
  for (size_t i = 0; i < a.head.size(); ++i)
    if (a.head[i] != b.head[i]) return a.head[i] ? -1 : 1;
  return compare_kinds(*a.attr, *b.attr);
}

bool ConstituentSet::contains(uint32_t idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

std::string ti_rule_name(TiRule r) {
  switch (r) {
    case TiRule::None: return "none";
    case TiRule::EmptyTopLayer: return "empty-top-layer";
    case TiRule::BaseSignConflict: return "base-sign-conflict";
    case TiRule::LayerIncoherent: return "layer-incoherent";
    case TiRule::InconsistentPositive: return "inconsistent-positive";
  }
  return "none";
}

bool set_representations_equal(const SetRepresentation& a, const SetRepresentation& b) {
  if (a.top != b.top || a.rest_negative != b.rest_negative) return false;
  if (a.claims.size() != b.claims.size()) return false;
  for (size_t i = 0; i < a.claims.size(); ++i) {
    if (a.claims[i].first != b.claims[i].first) return false;
    if (!kinds_equal(a.claims[i].second, b.claims[i].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Universe

Universe::Universe(Vocabulary vocab, UniverseOptions opts)
    : vocab_(std::move(vocab)), opts_(opts) {}

void Universe::warm(int max_rank) const {
  if (max_rank <= warmed_tables_) return;
  for (int c = 0; c <= max_rank + 2; ++c) atom_tables(c);
  for (int r = 0; r <= max_rank; ++r) {
    // Memoize what succeeds; failed counts and refused tables re-throw
    // later without touching the caches, so concurrent retries stay safe.
    try {
      gamma_count(r, 0);
    } catch (const result_too_large&) {
      continue;
    }
    try {
      gamma_table(r, 0);
    } catch (const budget_exceeded&) {
    }
  }
  warmed_tables_ = max_rank;
}

void Universe::warm_inconsistency(int max_rank) const {
  warm(max_rank);
  if (max_rank <= warmed_ti_) return;
  for (int r = 0; r <= max_rank; ++r) {
    try {
      const auto& table = gamma_table(r, 0);
      for (const auto& k : table) ti_rule(Constituent{{}, k});
    } catch (const budget_exceeded&) {
    } catch (const result_too_large&) {
    }
  }
  warmed_ti_ = max_rank;
}

const Universe::AtomTables& Universe::atom_tables(int ctx_len) const {
  auto it = atom_tables_.find(ctx_len);
  if (it != atom_tables_.end()) return it->second;
  AtomTables t;
  for (size_t p = 0; p < vocab_.size(); ++p) {
    int arity = vocab_.arity(static_cast<int>(p));
    std::vector<int> tuple(arity, 0);
    while (true) {
      bool in_range = ctx_len > 0;
      bool mentions_last = false;
      for (int v : tuple) {
        if (v >= ctx_len) in_range = false;
        if (v == ctx_len - 1) mentions_last = true;
      }
      if (in_range) {
        CtxAtom a{static_cast<int>(p), tuple};
        t.all_index[a] = static_cast<int>(t.all.size());
        t.all.push_back(a);
        if (mentions_last) {
          t.base_index[a] = static_cast<int>(t.base.size());
          t.base.push_back(a);
        }
      }
      int i = arity - 1;
      while (i >= 0 && tuple[i] == ctx_len - 1) tuple[i--] = 0;
      if (i < 0 || ctx_len == 0) break;
      ++tuple[i];
    }
  }
  // Split map against the previous context's atom table.
  const AtomTables* prev = ctx_len > 0 ? &atom_tables(ctx_len - 1) : nullptr;
  for (const CtxAtom& a : t.all) {
    bool mentions_last =
        std::find(a.args.begin(), a.args.end(), ctx_len - 1) != a.args.end();
    if (mentions_last)
      t.split.emplace_back(true, t.base_index.at(a));
    else
      t.split.emplace_back(false, prev->all_index.at(a));
  }
  size_t offset = 0;
  for (size_t p = 0; p < vocab_.size(); ++p) {
    t.pred_offset.push_back(offset);
    if (ctx_len > 0) {
      size_t tuples = 1;
      for (int i = 0; i < vocab_.arity(static_cast<int>(p)); ++i) tuples *= ctx_len;
      offset += tuples;
    }
  }
  return atom_tables_.emplace(ctx_len, std::move(t)).first->second;
}

const std::vector<CtxAtom>& Universe::atoms(int ctx_len) const { return atom_tables(ctx_len).all; }
const std::vector<CtxAtom>& Universe::base_atoms(int ctx_len) const {
  return atom_tables(ctx_len).base;
}
int Universe::atom_index(int ctx_len, const CtxAtom& a) const {
  return atom_tables(ctx_len).all_index.at(a);
}
int Universe::base_atom_index(int ctx_len, const CtxAtom& a) const {
  return atom_tables(ctx_len).base_index.at(a);
}

BigNat Universe::gamma_count(int rank, int ctx_len) const {
  auto key = std::make_pair(rank, ctx_len);
  auto it = gamma_counts_.find(key);
  if (it != gamma_counts_.end()) return it->second;
  BigNat result;
  if (rank == 0) {
    result = BigNat::pow2(atom_tables(ctx_len).base.size());
  } else {
    BigNat layer = gamma_count(rank - 1, ctx_len + 1);
    if (!layer.fits_u64() || layer.to_u64() > opts_.count_bit_cap)
      throw result_too_large("2^" + layer.to_string() + " exceeds the bit cap");
    result = gamma_count(0, ctx_len) * BigNat::pow2(layer.to_u64());
    if (result.bit_length() > opts_.count_bit_cap)
      throw result_too_large(std::to_string(result.bit_length()) + " bits");
  }
  gamma_counts_.emplace(key, result);
  return result;
}

BigNat Universe::delta_count(int rank, int ctx_len) const {
  BigNat head =
      ctx_len > 0 ? BigNat::pow2(atom_tables(ctx_len - 1).all.size()) : BigNat(1);
  return head * gamma_count(rank, ctx_len);
}

const std::vector<KindPtr>& Universe::gamma_table(int rank, int ctx_len) const {
  auto key = std::make_pair(rank, ctx_len);
  auto it = gamma_tables_.find(key);
  if (it != gamma_tables_.end()) return it->second;

  BigNat count;
  try {
    count = gamma_count(rank, ctx_len);
  } catch (const result_too_large& e) {
    throw budget_exceeded(std::string("(") + e.what() + ")");
  }
  if (count > BigNat(opts_.enumeration_budget)) throw budget_exceeded(count.to_string());

  std::vector<KindPtr> table;
  size_t nbase = atom_tables(ctx_len).base.size();
  uint64_t base_combos = uint64_t(1) << nbase;
  if (rank == 0) {
    for (uint64_t b = 0; b < base_combos; ++b) {
      Kind k;
      k.rank = 0;
      k.ctx_len = ctx_len;
      k.base = index_to_signs(b, nbase);
      table.push_back(std::make_shared<const Kind>(std::move(k)));
    }
  } else {
    const std::vector<KindPtr>& child = gamma_table(rank - 1, ctx_len + 1);
    size_t m = child.size();
    uint64_t layer_combos = uint64_t(1) << m;
    for (uint64_t b = 0; b < base_combos; ++b) {
      std::vector<bool> base = index_to_signs(b, nbase);
      for (uint64_t l = 0; l < layer_combos; ++l) {
        Kind k;
        k.rank = rank;
        k.ctx_len = ctx_len;
        k.base = base;
        std::vector<bool> signs = index_to_signs(l, m);
        for (size_t j = 0; j < m; ++j)
          if (signs[j]) k.positives.push_back(child[j]);
        table.push_back(std::make_shared<const Kind>(std::move(k)));
      }
    }
  }
  return gamma_tables_.emplace(key, std::move(table)).first->second;
}

Constituent Universe::constituent_at(int rank, uint32_t index) const {
  const auto& table = delta_table(rank);
  if (index >= table.size()) throw error("constituent index out of range");
  return Constituent{{}, table[index]};
}

std::optional<uint64_t> Universe::find_kind_index(const KindPtr& k) const {
  const std::vector<KindPtr>& table = gamma_table(k->rank, k->ctx_len);
  uint64_t base_part = signs_to_index(k->base);
  if (k->rank == 0) return base_part;
  const std::vector<KindPtr>& child = gamma_table(k->rank - 1, k->ctx_len + 1);
  std::vector<bool> signs(child.size(), false);
  for (const KindPtr& p : k->positives) {
    auto idx = find_kind_index(p);
    if (!idx || *idx >= child.size()) return std::nullopt;
    signs[*idx] = true;
  }
  uint64_t idx = base_part * (uint64_t(1) << child.size()) + signs_to_index(signs);
  if (idx >= table.size()) return std::nullopt;
  return idx;
}

std::optional<uint32_t> Universe::find_constituent_index(const Constituent& d) const {
  if (d.ctx_len() != 0) return std::nullopt;
  auto idx = find_kind_index(d.attr);
  if (!idx) return std::nullopt;
  return static_cast<uint32_t>(*idx);
}

std::vector<Constituent> Universe::enumerate_constituents(int rank, int ctx_len) const {
  BigNat count = delta_count(rank, ctx_len);
  if (count > BigNat(opts_.enumeration_budget)) throw budget_exceeded(count.to_string());
  const auto& kinds = gamma_table(rank, ctx_len);
  std::vector<Constituent> out;
  if (ctx_len == 0) {
    for (const auto& k : kinds) out.push_back(Constituent{{}, k});
    return out;
  }
  size_t nhead = atom_tables(ctx_len - 1).all.size();
  uint64_t head_combos = uint64_t(1) << nhead;
  for (uint64_t h = 0; h < head_combos; ++h) {
    std::vector<bool> head = index_to_signs(h, nhead);
    for (const auto& k : kinds) out.push_back(Constituent{head, k});
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace {
const std::vector<bool> kNoAtoms;  // A[0] is empty for sentences
}

bool Universe::eval_rec(const FormulaPtr& f, EvalEnv& env,
                        const std::vector<bool>& atom_signs, const Kind* kind, int ctx_len,
                        EvalScratch& scratch) const {
  switch (f->kind) {
    case Conn::True: return true;
    case Conn::False: return false;
    case Conn::Atom: {
      size_t idx = atom_tables(ctx_len).pred_offset[f->pred];
      for (const auto& v : f->args) {
        const int* pos = env.lookup(v);
        if (!pos) throw free_variable_escape(v);
        idx = idx * static_cast<size_t>(ctx_len) + static_cast<size_t>(*pos);
      }
      return atom_signs[idx];
    }
    case Conn::Equal: {
      const int* a = env.lookup(f->args[0]);
      const int* b = env.lookup(f->args[1]);
      if (!a) throw free_variable_escape(f->args[0]);
      if (!b) throw free_variable_escape(f->args[1]);
      // Context positions denote pairwise distinct individuals.
      return *a == *b;
    }
    case Conn::Not: return !eval_rec(f->lhs, env, atom_signs, kind, ctx_len, scratch);
    case Conn::And:
      return eval_rec(f->lhs, env, atom_signs, kind, ctx_len, scratch) &&
             eval_rec(f->rhs, env, atom_signs, kind, ctx_len, scratch);
    case Conn::Or:
      return eval_rec(f->lhs, env, atom_signs, kind, ctx_len, scratch) ||
             eval_rec(f->rhs, env, atom_signs, kind, ctx_len, scratch);
    case Conn::Implies:
      return !eval_rec(f->lhs, env, atom_signs, kind, ctx_len, scratch) ||
             eval_rec(f->rhs, env, atom_signs, kind, ctx_len, scratch);
    case Conn::ExistsExcl:
    case Conn::ForallExcl:
      return eval_exclusive(f->kind == Conn::ExistsExcl, f->var, f->lhs, env, atom_signs, kind,
                            ctx_len, scratch);
    case Conn::Exists:
    case Conn::Forall: {
      // (exists z) f == (existsE z) f | f[z:=y1] | ... over the context.
      bool existential = f->kind == Conn::Exists;
      bool result =
          eval_exclusive(existential, f->var, f->lhs, env, atom_signs, kind, ctx_len, scratch);
      if (existential ? !result : result) {
        env.binds.emplace_back(&f->var, 0);
        for (int pos = 0; pos < ctx_len; ++pos) {
          env.binds.back().second = pos;
          bool sub = eval_rec(f->lhs, env, atom_signs, kind, ctx_len, scratch);
          if (existential && sub) {
            result = true;
            break;
          }
          if (!existential && !sub) {
            result = false;
            break;
          }
        }
        env.binds.pop_back();
      }
      return result;
    }
  }
  return false;
}

bool Universe::eval_exclusive(bool existential, const std::string& var, const FormulaPtr& body,
                              EvalEnv& env, const std::vector<bool>& atom_signs,
                              const Kind* kind, int ctx_len, EvalScratch& scratch) const {
  bool result = !existential;
  const AtomTables& child_tables = atom_tables(ctx_len + 1);
  // The scratch stack is pre-sized by the caller; one buffer per depth, so
  // references stay valid across the recursion.
  std::vector<bool>& child_signs = scratch.signs[ctx_len + 1];
  child_signs.resize(child_tables.all.size());
  env.binds.emplace_back(&var, ctx_len);
  // An additional individual exists exactly for the positively signed layer
  // kinds; all individuals of one kind agree on lower-rank facts.
  for (const KindPtr& p : kind->positives) {
    for (size_t j = 0; j < child_tables.all.size(); ++j) {
      const auto& [is_base, idx] = child_tables.split[j];
      child_signs[j] = is_base ? p->base[idx] : atom_signs[idx];
    }
    bool sub = eval_rec(body, env, child_signs, p.get(), ctx_len + 1, scratch);
    if (existential && sub) {
      result = true;
      break;
    }
    if (!existential && !sub) {
      result = false;
      break;
    }
  }
  env.binds.pop_back();
  return result;
}

bool Universe::eval(const Constituent& d, const FormulaPtr& f,
                    const std::vector<std::string>& ctx_names) const {
  if (quantifier_rank(f) > d.rank())
    throw rank_too_high("rank " + std::to_string(quantifier_rank(f)) + " formula against rank " +
                        std::to_string(d.rank()) + " constituent");
  std::vector<std::string> names = ctx_names;
  if (names.empty())
    for (int i = 0; i < d.ctx_len(); ++i) names.push_back("x" + std::to_string(i + 1));
  if (static_cast<int>(names.size()) != d.ctx_len())
    throw error("context name count does not match constituent context");
  EvalEnv env;
  for (size_t i = 0; i < names.size(); ++i)
    env.binds.emplace_back(&names[i], static_cast<int>(i));
  for (const auto& v : free_variables(f))
    if (!env.lookup(v)) throw free_variable_escape(v);

  int c = d.ctx_len();
  std::vector<bool> atom_signs(atoms(c).size());
  const AtomTables& t = atom_tables(c);
  for (size_t j = 0; j < t.all.size(); ++j) {
    const auto& [is_base, idx] = t.split[j];
    atom_signs[j] = is_base ? d.attr->base[idx] : d.head[idx];
  }
  EvalScratch scratch;
  scratch.signs.resize(static_cast<size_t>(c + d.rank() + 2));
  return eval_rec(f, env, atom_signs, d.attr.get(), c, scratch);
}

ConstituentSet Universe::dnf_serial(const FormulaPtr& f, int rank) const {
  if (quantifier_rank(f) > rank)
    throw rank_too_high("dnf at rank " + std::to_string(rank));
  if (!free_variables(f).empty())
    throw free_variable_escape(*free_variables(f).begin());
  const auto& table = delta_table(rank);
  for (int c = 0; c <= rank + 1; ++c) atom_tables(c);
  ConstituentSet out;
  out.rank = rank;
  EvalScratch scratch;
  scratch.signs.resize(static_cast<size_t>(rank) + 2);
  EvalEnv env;
  for (uint32_t i = 0; i < table.size(); ++i) {
    env.binds.clear();
    if (eval_rec(f, env, kNoAtoms, table[i].get(), 0, scratch)) out.members.push_back(i);
  }
  return out;
}

ConstituentSet Universe::dnf(const FormulaPtr& f, int rank) const {
  if (opts_.threads <= 1) return dnf_serial(f, rank);
  if (quantifier_rank(f) > rank)
    throw rank_too_high("dnf at rank " + std::to_string(rank));
  if (!free_variables(f).empty())
    throw free_variable_escape(*free_variables(f).begin());
  const auto& table = delta_table(rank);
  warm(rank);  // shared caches must exist before the read-only parallel sweep
  std::vector<char> hit(table.size(), 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(opts_.threads)
#endif
  {
    EvalScratch scratch;
    scratch.signs.resize(static_cast<size_t>(rank) + 2);
    EvalEnv env;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(table.size()); ++i) {
      env.binds.clear();
      hit[i] = eval_rec(f, env, kNoAtoms, table[i].get(), 0, scratch) ? 1 : 0;
    }
  }
  ConstituentSet out;
  out.rank = rank;
  for (uint32_t i = 0; i < table.size(); ++i)
    if (hit[i]) out.members.push_back(i);
  return out;
}

ConstituentSet Universe::expand(const Constituent& d, int s) const {
  if (d.ctx_len() != 0) throw error("expansion is defined for sentence constituents");
  return dnf(to_formula(d), d.rank() + s);
}

// ---------------------------------------------------------------- classification

KindPtr Universe::kind_of(const FiniteModel& m, const std::vector<int>& env, int rank) const {
  Kind k;
  k.rank = rank;
  k.ctx_len = static_cast<int>(env.size());
  k.dense = false;
  for (const CtxAtom& a : base_atoms(k.ctx_len)) {
    std::vector<int> tuple;
    for (int pos : a.args) tuple.push_back(env[pos]);
    k.base.push_back(m.holds(a.pred, tuple));
  }
  if (rank > 0) {
    std::vector<int> child_env = env;
    child_env.push_back(-1);
    for (int e = 0; e < static_cast<int>(m.size()); ++e) {
      if (std::find(env.begin(), env.end(), e) != env.end()) continue;
      child_env.back() = e;
      KindPtr p = kind_of(m, child_env, rank - 1);
      bool dup = false;
      for (const auto& q : k.positives)
        if (kinds_equal(p, q)) {
          dup = true;
          break;
        }
      if (!dup) k.positives.push_back(p);
    }
    std::sort(k.positives.begin(), k.positives.end(),
              [](const KindPtr& a, const KindPtr& b) { return compare_kinds(*a, *b) < 0; });
  }
  return std::make_shared<const Kind>(std::move(k));
}

Constituent Universe::satisfying_constituent(const FiniteModel& m, int rank,
                                             const std::vector<int>& env) const {
  if (!(m.vocab == vocab_)) throw vocabulary_mismatch("model vocabulary differs");
  Constituent d;
  d.attr = kind_of(m, env, rank);
  int c = static_cast<int>(env.size());
  if (c > 0) {
    for (const CtxAtom& a : atoms(c - 1)) {
      std::vector<int> tuple;
      for (int pos : a.args) tuple.push_back(env[pos]);
      d.head.push_back(m.holds(a.pred, tuple));
    }
  }
  return d;
}

// ---------------------------------------------------------------- structure

KindPtr Universe::truncate_kind(const KindPtr& k) const {
  if (k->rank == 0) throw rank_zero();
  Kind t;
  t.rank = k->rank - 1;
  t.ctx_len = k->ctx_len;
  t.base = k->base;
  t.dense = false;
  t.sign_conflict = k->sign_conflict;
  if (t.rank > 0) {
    for (const KindPtr& p : k->positives) {
      KindPtr tp = truncate_kind(p);
      bool dup = false;
      for (const auto& q : t.positives)
        if (kinds_equal(tp, q)) {
          dup = true;
          break;
        }
      if (!dup) t.positives.push_back(tp);
    }
    std::sort(t.positives.begin(), t.positives.end(),
              [](const KindPtr& a, const KindPtr& b) { return compare_kinds(*a, *b) < 0; });
  }
  return std::make_shared<const Kind>(std::move(t));
}

Constituent Universe::remove_top_layer(const Constituent& d) const {
  return Constituent{d.head, truncate_kind(d.attr)};
}

bool Universe::is_prefix(const Constituent& lo, const Constituent& hi) const {
  if (hi.rank() != lo.rank() + 1)
    throw rank_mismatch("prefix requires ranks r and r+1, got " + std::to_string(lo.rank()) +
                        " and " + std::to_string(hi.rank()));
  if (hi.ctx_len() != lo.ctx_len()) throw rank_mismatch("contexts differ");
  return constituents_equal(lo, remove_top_layer(hi));
}

SetRepresentation Universe::set_representation(const Constituent& d) const {
  SetRepresentation r;
  if (d.rank() == 0) {
    r.top = true;
    return r;
  }
  bool enumerable = true;
  try {
    const auto& table = gamma_table(d.rank() - 1, d.ctx_len() + 1);
    for (const KindPtr& k : table) {
      bool pos = false;
      for (const auto& p : d.attr->positives)
        if (kinds_equal(p, k)) {
          pos = true;
          break;
        }
      r.claims.emplace_back(pos, k);
    }
  } catch (const budget_exceeded&) {
    enumerable = false;
  }
  if (!enumerable) {
    r.claims.clear();
    for (const auto& p : d.attr->positives) r.claims.emplace_back(true, p);
    r.rest_negative = true;
  }
  return r;
}

// ---------------------------------------------------------------- trivial inconsistency

std::vector<bool> Universe::restricted_base(const Kind& sub) const {
  // Drop the middle context variable from a depth-two kind's atoms: keep
  // atoms avoiding position c, remap c+1 -> c. The result is shaped like the
  // base of a depth-one kind.
  int c = sub.ctx_len - 2;  // parent's last position
  const auto& from = base_atoms(sub.ctx_len);
  std::vector<bool> out(base_atoms(sub.ctx_len - 1).size());
  for (size_t i = 0; i < from.size(); ++i) {
    bool mentions_middle =
        std::find(from[i].args.begin(), from[i].args.end(), c) != from[i].args.end();
    if (mentions_middle) continue;
    CtxAtom remapped{from[i].pred, from[i].args};
    for (int& a : remapped.args)
      if (a == c + 1) a = c;
    out[base_atom_index(sub.ctx_len - 1, remapped)] = sub.base[i];
  }
  return out;
}

TiRule Universe::ti_kind(const Kind& k) const {
  auto memo = ti_memo_.find(&k);
  if (memo != ti_memo_.end()) return memo->second;
  TiRule rule = TiRule::None;
  if (k.sign_conflict) rule = TiRule::BaseSignConflict;
  if (rule == TiRule::None && k.rank >= 2) {
    // Witnesses of two distinct positive kinds see each other: every
    // positive kind must carry, one layer down, a positive sub-kind whose
    // restricted atom pattern matches each other positive kind's base; and
    // every positive sub-kind's restricted pattern must match some positive
    // kind's base.
    for (const KindPtr& g : k.positives) {
      for (const KindPtr& sub : g->positives) {
        std::vector<bool> want = restricted_base(*sub);
        bool found = false;
        for (const KindPtr& other : k.positives)
          if (other->base == want) {
            found = true;
            break;
          }
        if (!found) {
          rule = TiRule::LayerIncoherent;
          break;
        }
      }
      if (rule != TiRule::None) break;
      for (const KindPtr& other : k.positives) {
        if (kinds_equal(other, g)) continue;
        bool found = false;
        for (const KindPtr& sub : g->positives)
          if (restricted_base(*sub) == other->base) {
            found = true;
            break;
          }
        if (!found) {
          rule = TiRule::LayerIncoherent;
          break;
        }
      }
      if (rule != TiRule::None) break;
    }
  }
  if (rule == TiRule::None && k.rank >= 1) {
    for (const KindPtr& g : k.positives)
      if (ti_kind(*g) != TiRule::None) {
        rule = TiRule::InconsistentPositive;
        break;
      }
  }
  ti_memo_.emplace(&k, rule);
  return rule;
}

TiRule Universe::ti_rule(const Constituent& d) const {
  // An empty top layer of a sentence constituent denies every individual;
  // domains are nonempty.
  if (d.ctx_len() == 0 && d.rank() >= 1 && d.attr->positives.empty())
    return TiRule::EmptyTopLayer;
  return ti_kind(*d.attr);
}

bool Universe::trivially_inconsistent(const Constituent& d) const {
  return ti_rule(d) != TiRule::None;
}

// ---------------------------------------------------------------- display form

FormulaPtr Universe::kind_formula(const KindPtr& k) const {
  std::vector<FormulaPtr> parts;
  const auto& batoms = base_atoms(k->ctx_len);
  for (size_t i = 0; i < batoms.size(); ++i) {
    std::vector<std::string> args;
    for (int pos : batoms[i].args) args.push_back("x" + std::to_string(pos + 1));
    FormulaPtr a = Formula::atom(batoms[i].pred, std::move(args));
    parts.push_back(k->base[i] ? a : Formula::lnot(a));
  }
  if (k->rank >= 1) {
    std::string z = "x" + std::to_string(k->ctx_len + 1);
    std::vector<FormulaPtr> cases;
    for (const KindPtr& p : k->positives) {
      FormulaPtr body = kind_formula(p);
      parts.push_back(Formula::exists_excl(z, body));
      cases.push_back(body);
    }
    parts.push_back(Formula::forall_excl(z, Formula::disj(cases)));
  }
  return Formula::conj(parts);
}

FormulaPtr Universe::to_formula(const Constituent& d) const {
  std::vector<FormulaPtr> parts;
  if (d.ctx_len() > 0) {
    const auto& hatoms = atoms(d.ctx_len() - 1);
    for (size_t i = 0; i < hatoms.size(); ++i) {
      std::vector<std::string> args;
      for (int pos : hatoms[i].args) args.push_back("x" + std::to_string(pos + 1));
      FormulaPtr a = Formula::atom(hatoms[i].pred, std::move(args));
      parts.push_back(d.head[i] ? a : Formula::lnot(a));
    }
  }
  parts.push_back(kind_formula(d.attr));
  return Formula::conj(parts);
}

// ---------------------------------------------------------------- normalizer

namespace {

struct DisplayClaim {
  std::string var;
  FormulaPtr body;
};

struct DisplayParts {
  std::map<CtxAtom, bool> literals;  // over the current full context
  bool conflict = false;
  bool has_closure = false;
  std::vector<DisplayClaim> pos_claims;      // existsE claims
  std::vector<DisplayClaim> neg_claims;      // negated claims
  std::vector<DisplayClaim> closure_claims;  // forallE body split on |
};

void split_disjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Conn::Or) {
    split_disjuncts(f->lhs, out);
    split_disjuncts(f->rhs, out);
    return;
  }
  out.push_back(f);
}

// Splits a constituent display into literals, existential claims, and the
// universal closure. Inclusive quantifiers are accepted only where they
// coincide with exclusive ones (empty scope).
void flatten_display(const FormulaPtr& f, bool sign, bool allow_inclusive,
                     std::map<std::string, int>& var_pos, DisplayParts& parts) {
  switch (f->kind) {
    case Conn::True:
      if (!sign) throw error("constituent display: negated true");
      return;
    case Conn::And:
      if (!sign) throw error("constituent display: negated conjunction");
      flatten_display(f->lhs, true, allow_inclusive, var_pos, parts);
      flatten_display(f->rhs, true, allow_inclusive, var_pos, parts);
      return;
    case Conn::Not:
      flatten_display(f->lhs, !sign, allow_inclusive, var_pos, parts);
      return;
    case Conn::Atom: {
      CtxAtom a;
      a.pred = f->pred;
      for (const auto& v : f->args) {
        auto it = var_pos.find(v);
        if (it == var_pos.end()) throw free_variable_escape(v);
        a.args.push_back(it->second);
      }
      auto [it, inserted] = parts.literals.emplace(a, sign);
      if (!inserted && it->second != sign) parts.conflict = true;
      return;
    }
    case Conn::Equal: throw error("constituent display: equality atoms are not part of the basis");
    case Conn::Exists:
      if (!allow_inclusive)
        throw error("constituent display: inclusive quantifier below the top level");
      [[fallthrough]];
    case Conn::ExistsExcl:
      if (sign)
        parts.pos_claims.push_back({f->var, f->lhs});
      else
        parts.neg_claims.push_back({f->var, f->lhs});
      return;
    case Conn::Forall:
      if (!allow_inclusive)
        throw error("constituent display: inclusive quantifier below the top level");
      [[fallthrough]];
    case Conn::ForallExcl: {
      if (!sign) throw error("constituent display: negated closure");
      parts.has_closure = true;
      std::vector<FormulaPtr> disjuncts;
      split_disjuncts(f->lhs, disjuncts);
      for (auto& d : disjuncts) {
        if (d->kind == Conn::False) continue;  // empty layer: no kind is permitted
        parts.closure_claims.push_back({f->var, d});
      }
      return;
    }
    default: throw error("constituent display: unsupported connective");
  }
}

}  // namespace

Constituent Universe::constituent_from_formula(const FormulaPtr& f, int rank) const {
  // Recursive builder: a kind description is a conjunction of literals,
  // signed exclusive-existential claims, and an optional universal closure.
  struct Builder {
    const Universe& u;

    KindPtr build(const FormulaPtr& body, int ctx_len, int remaining,
                  std::map<std::string, int>& var_pos,
                  const std::vector<bool>& outer_signs) {
      DisplayParts parts;
      flatten_display(body, true, /*allow_inclusive=*/ctx_len == 0, var_pos, parts);
      Kind k;
      k.rank = remaining;
      k.ctx_len = ctx_len;
      k.dense = false;
      k.sign_conflict = parts.conflict;

      const auto& batoms = u.base_atoms(ctx_len);
      k.base.assign(batoms.size(), false);
      for (const auto& [atom, sign] : parts.literals) {
        bool mentions_last = std::find(atom.args.begin(), atom.args.end(), ctx_len - 1) !=
                             atom.args.end();
        if (ctx_len > 0 && mentions_last) {
          k.base[u.base_atom_index(ctx_len, atom)] = sign;
        } else {
          // Outer-context literal: must agree with the enclosing pattern.
          if (ctx_len == 0) throw error("constituent display: atom without context");
          int idx = u.atom_index(ctx_len - 1, atom);
          if (outer_signs[idx] != sign) k.sign_conflict = true;
        }
      }

      if (remaining == 0) {
        if (!parts.pos_claims.empty() || !parts.closure_claims.empty() ||
            !parts.neg_claims.empty())
          throw error("constituent display: quantifier nesting exceeds rank");
        return std::make_shared<const Kind>(std::move(k));
      }

      std::vector<bool> full_signs;
      {
        const auto& t = u.atom_tables(ctx_len);
        full_signs.resize(t.all.size());
        for (size_t j = 0; j < t.all.size(); ++j) {
          const auto& [is_base, idx] = t.split[j];
          full_signs[j] = is_base ? k.base[idx] : outer_signs[idx];
        }
      }

      auto build_claim = [&](const DisplayClaim& claim) {
        std::map<std::string, int> inner = var_pos;
        inner[claim.var] = ctx_len;
        return build(claim.body, ctx_len + 1, remaining - 1, inner, full_signs);
      };

      for (const auto& claim : parts.pos_claims) {
        KindPtr p = build_claim(claim);
        bool dup = false;
        for (const auto& q : k.positives)
          if (kinds_equal(p, q)) dup = true;
        if (!dup) k.positives.push_back(p);
      }
      std::sort(k.positives.begin(), k.positives.end(),
                [](const KindPtr& a, const KindPtr& b) { return compare_kinds(*a, *b) < 0; });

      for (const auto& claim : parts.neg_claims) {
        KindPtr n = build_claim(claim);
        for (const auto& q : k.positives)
          if (kinds_equal(n, q)) k.sign_conflict = true;
      }
      if (parts.has_closure) {
        // The closure must permit every asserted positive kind.
        std::vector<KindPtr> permitted;
        for (const auto& claim : parts.closure_claims) permitted.push_back(build_claim(claim));
        for (const auto& p : k.positives) {
          bool ok = false;
          for (const auto& c : permitted)
            if (kinds_equal(p, c)) ok = true;
          if (!ok) k.sign_conflict = true;
        }
      }
      return std::make_shared<const Kind>(std::move(k));
    }
  };

  std::map<std::string, int> var_pos;
  Builder b{*this};
  KindPtr attr = b.build(f, 0, rank, var_pos, {});
  return Constituent{{}, attr};
}

// ---------------------------------------------------------------- bit strings

std::string Universe::constituent_to_bits(const Constituent& d) const {
  if (d.rank() < 1) throw representation_not_dense();
  const std::vector<KindPtr>* table;
  try {
    table = &gamma_table(d.rank() - 1, d.ctx_len() + 1);
  } catch (const budget_exceeded&) {
    throw representation_not_dense();
  }
  std::vector<bool> signs(table->size(), false);
  for (const auto& p : d.attr->positives) {
    auto idx = find_kind_index(p);
    if (!idx) throw representation_not_dense();
    signs[*idx] = true;
  }
  return signs_to_bitstring(signs);
}

Constituent Universe::bits_to_constituent(const std::string& bits, int rank) const {
  const auto& table = gamma_table(rank - 1, 1);
  if (bits.size() != table.size())
    throw error("bit-string width " + std::to_string(bits.size()) + " does not match layer size " +
                std::to_string(table.size()));
  Kind k;
  k.rank = rank;
  k.ctx_len = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') k.positives.push_back(table[i]);
  return Constituent{{}, std::make_shared<const Kind>(std::move(k))};
}

std::string Universe::constituent_id(int rank, uint32_t index) const {
  Constituent d = constituent_at(rank, index);
  if (rank == 0) return "0x0";
  std::string bits = constituent_to_bits(d);
  // Hex of the bit-string value, most significant bit first.
  std::string hex;
  uint64_t acc = 0;
  int nbits = 0;
  std::string out;
  // Process from the least significant end in 4-bit groups.
  for (size_t i = bits.size(); i-- > 0;) {
    if (bits[i] == '1') acc |= uint64_t(1) << nbits;
    ++nbits;
    if (nbits == 4 || i == 0) {
      const char* digits = "0123456789abcdef";
      out.push_back(digits[acc & 0xf]);
      acc = 0;
      nbits = 0;
    }
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return "0x" + out;
}

}  // namespace folspace
