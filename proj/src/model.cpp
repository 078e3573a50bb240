#include "folspace/model.hpp"

#include <algorithm>
#include <numeric>

#include "folspace/errors.hpp"
#include "folspace/rational.hpp"

namespace folspace {

namespace {

bool check_rec(const FiniteModel& m, const FormulaPtr& f, std::map<std::string, int>& env,
               std::vector<int>& bound_values) {
  switch (f->kind) {
    case Conn::True: return true;
    case Conn::False: return false;
    case Conn::Atom: {
      if (f->pred < 0 || f->pred >= static_cast<int>(m.vocab.size()))
        throw vocabulary_mismatch("atom predicate not in model vocabulary");
      std::vector<int> tuple;
      tuple.reserve(f->args.size());
      for (const auto& v : f->args) {
        auto it = env.find(v);
        if (it == env.end()) throw free_variable_escape(v);
        tuple.push_back(it->second);
      }
      return m.holds(f->pred, tuple);
    }
    case Conn::Equal: {
      auto a = env.find(f->args[0]), b = env.find(f->args[1]);
      if (a == env.end()) throw free_variable_escape(f->args[0]);
      if (b == env.end()) throw free_variable_escape(f->args[1]);
      return a->second == b->second;
    }
    case Conn::Not: return !check_rec(m, f->lhs, env, bound_values);
    case Conn::And:
      return check_rec(m, f->lhs, env, bound_values) && check_rec(m, f->rhs, env, bound_values);
    case Conn::Or:
      return check_rec(m, f->lhs, env, bound_values) || check_rec(m, f->rhs, env, bound_values);
    case Conn::Implies:
      return !check_rec(m, f->lhs, env, bound_values) || check_rec(m, f->rhs, env, bound_values);
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl: {
      bool exclusive = f->kind == Conn::ExistsExcl || f->kind == Conn::ForallExcl;
      bool existential = f->kind == Conn::Exists || f->kind == Conn::ExistsExcl;
      auto saved = env.find(f->var) != env.end() ? std::optional<int>(env[f->var]) : std::nullopt;
      bool shadowed_bound = false;
      // The shadowed binding's value no longer excludes elements.
      if (saved) {
        auto it = std::find(bound_values.begin(), bound_values.end(), *saved);
        if (it != bound_values.end()) {
          bound_values.erase(it);
          shadowed_bound = true;
        }
      }
      bool result = !existential;
      for (int e = 0; e < static_cast<int>(m.size()); ++e) {
        if (exclusive &&
            std::find(bound_values.begin(), bound_values.end(), e) != bound_values.end())
          continue;
        env[f->var] = e;
        bound_values.push_back(e);
        bool sub = check_rec(m, f->lhs, env, bound_values);
        bound_values.pop_back();
        if (existential && sub) {
          result = true;
          break;
        }
        if (!existential && !sub) {
          result = false;
          break;
        }
      }
      if (saved) {
        env[f->var] = *saved;
        if (shadowed_bound) bound_values.push_back(*saved);
      } else {
        env.erase(f->var);
      }
      return result;
    }
  }
  return false;
}

}  // namespace

bool check(const FiniteModel& m, const FormulaPtr& f, const std::map<std::string, int>& env) {
  std::map<std::string, int> e = env;
  std::vector<int> bound;
  for (const auto& [_, v] : e) bound.push_back(v);
  return check_rec(m, f, e, bound);
}

namespace {

// All tuples over {0..n-1} of length arity, lexicographic order.
std::vector<std::vector<int>> all_tuples(int n, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    int i = arity - 1;
    while (i >= 0 && cur[i] == n - 1) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::string canonical_key(const FiniteModel& m) {
  // Minimum table bit-string over all domain permutations.
  int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string key;
    for (size_t p = 0; p < m.vocab.size(); ++p) {
      for (const auto& t : all_tuples(n, m.vocab.arity(static_cast<int>(p)))) {
        std::vector<int> mapped(t.size());
        for (size_t i = 0; i < t.size(); ++i) mapped[i] = perm[t[i]];
        key.push_back(m.holds(static_cast<int>(p), mapped) ? '1' : '0');
      }
    }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

void for_each_model(const Vocabulary& vocab, int max_size,
                    const std::function<void(const FiniteModel&)>& fn, bool iso_reduce) {
  if (max_size < 1) throw error("model enumeration requires max_size >= 1");
  std::set<std::string> seen;
  for (int n = 1; n <= max_size; ++n) {
    // Per-predicate tuple universes; a model is a choice of subset for each.
    std::vector<std::vector<std::vector<int>>> tuples;
    uint64_t total_bits = 0;
    for (size_t p = 0; p < vocab.size(); ++p) {
      tuples.push_back(all_tuples(n, vocab.arity(static_cast<int>(p))));
      total_bits += tuples.back().size();
    }
    if (total_bits > 30) throw budget_exceeded(BigNat::pow2(total_bits).to_string());
    uint64_t combos = uint64_t(1) << total_bits;
    for (uint64_t bits = 0; bits < combos; ++bits) {
      FiniteModel m;
      m.vocab = vocab;
      for (int e = 0; e < n; ++e) m.domain.push_back(std::string(1, static_cast<char>('a' + e)));
      m.tables.resize(vocab.size());
      uint64_t b = bits;
      for (size_t p = 0; p < vocab.size(); ++p) {
        for (const auto& t : tuples[p]) {
          if (b & 1) m.tables[p].insert(t);
          b >>= 1;
        }
      }
      if (iso_reduce) {
        if (n > 8) throw budget_exceeded("isomorphism reduction for domains > 8");
        std::string key = std::to_string(n) + ":" + canonical_key(m);
        if (!seen.insert(key).second) continue;
      }
      fn(m);
    }
  }
}

std::vector<FiniteModel> enumerate_models(const Vocabulary& vocab, int max_size, bool iso_reduce) {
  std::vector<FiniteModel> out;
  for_each_model(vocab, max_size, [&](const FiniteModel& m) { out.push_back(m); }, iso_reduce);
  return out;
}

int monadic_model_bound(const Vocabulary& vocab, int rank) {
  if (!vocab.monadic()) throw error("monadic bound requested for non-monadic vocabulary");
  int p = static_cast<int>(vocab.size());
  return std::max(1, (1 << p) * std::max(1, rank));
}

bool has_model(const Vocabulary& vocab, const FormulaPtr& f, int max_size) {
  bool found = false;
  try {
    for_each_model(vocab, max_size, [&](const FiniteModel& m) {
      if (!found && check(m, f)) found = true;
    }, /*iso_reduce=*/max_size <= 6);
  } catch (const budget_exceeded&) {
    // Fall back to raw enumeration without reduction.
    for_each_model(vocab, max_size, [&](const FiniteModel& m) {
      if (!found && check(m, f)) found = true;
    });
  }
  return found;
}

}  // namespace folspace
