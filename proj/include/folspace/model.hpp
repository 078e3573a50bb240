#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "folspace/logic.hpp"

namespace folspace {

// Finite relational structure over a nonempty domain. Elements are named;
// tables store tuples of element indices.
struct FiniteModel {
  Vocabulary vocab;
  std::vector<std::string> domain;
  std::vector<std::set<std::vector<int>>> tables;  // one per predicate

  size_t size() const { return domain.size(); }
  bool holds(int pred, const std::vector<int>& tuple) const {
    return tables[pred].count(tuple) > 0;
  }
};

// Tarskian evaluation with an environment. Equality is identity on
// elements; exclusive quantifiers range over elements distinct from all
// values currently bound in the environment.
bool check(const FiniteModel& m, const FormulaPtr& f,
           const std::map<std::string, int>& env = {});

// All models over the vocabulary with 1..max_size elements, deterministic
// order (by size, then by table bits). With iso_reduce, one representative
// per isomorphism class (canonical labeling by permutation; domains <= 8).
void for_each_model(const Vocabulary& vocab, int max_size,
                    const std::function<void(const FiniteModel&)>& fn,
                    bool iso_reduce = false);

std::vector<FiniteModel> enumerate_models(const Vocabulary& vocab, int max_size,
                                          bool iso_reduce = false);

// Finite-model search bound that decides satisfiability of rank-r sentences
// over monadic vocabularies: 2^p * r with p unary predicates.
int monadic_model_bound(const Vocabulary& vocab, int rank);

// True if some model of size <= max_size satisfies f. Exact decision
// procedure for monadic vocabularies when max_size >= monadic_model_bound.
bool has_model(const Vocabulary& vocab, const FormulaPtr& f, int max_size);

}  // namespace folspace
