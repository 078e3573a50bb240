#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace folspace {

// Finite relational vocabulary: named predicates with positive arity,
// no constants or function symbols.
struct Predicate {
  std::string name;
  int arity = 1;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Predicate> preds);

  const std::vector<Predicate>& predicates() const { return preds_; }
  std::optional<int> index_of(const std::string& name) const;
  int arity(int pred) const { return preds_[pred].arity; }
  const std::string& name(int pred) const { return preds_[pred].name; }
  size_t size() const { return preds_.size(); }
  bool monadic() const;

  bool operator==(const Vocabulary& o) const;

 private:
  std::vector<Predicate> preds_;
  std::map<std::string, int> by_name_;
};

enum class Conn {
  Atom,
  Equal,
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
  ExistsExcl,
  ForallExcl,
  True,
  False,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Variables are named; binding is by name with the
// usual shadowing rules.
struct Formula {
  Conn kind;
  int pred = -1;                  // Atom
  std::vector<std::string> args;  // Atom argument variables; Equal uses args[0], args[1]
  std::string var;                // quantifier-bound variable
  FormulaPtr lhs, rhs;            // children (unary ops use lhs)

  static FormulaPtr atom(int pred, std::vector<std::string> args);
  static FormulaPtr equal(std::string a, std::string b);
  static FormulaPtr lnot(FormulaPtr f);
  static FormulaPtr land(FormulaPtr a, FormulaPtr b);
  static FormulaPtr lor(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(std::string v, FormulaPtr f);
  static FormulaPtr exists(std::string v, FormulaPtr f);
  static FormulaPtr exists_excl(std::string v, FormulaPtr f);
  static FormulaPtr forall_excl(std::string v, FormulaPtr f);
  static FormulaPtr top();
  static FormulaPtr bottom();

  // Conjunction/disjunction of a list; empty list yields top/bottom.
  static FormulaPtr conj(const std::vector<FormulaPtr>& fs);
  static FormulaPtr disj(const std::vector<FormulaPtr>& fs);
};

// Grammar (ASCII): quantifiers `forall v. f`, `exists v. f`, `existsE v. f`,
// `forallE v. f` extend to the right; connectives `f & f`, `f | f`, `f -> f`,
// `!f`; atoms `P(v,...)`, `v = v`, `true`, `false`; parentheses.
// Precedence: ! > & > | > ->.
FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab,
                         const std::set<std::string>& free_allowed = {});
FormulaPtr parse_sentence(const std::string& text, const Vocabulary& vocab);

std::string print_formula(const FormulaPtr& f, const Vocabulary& vocab);

int quantifier_rank(const FormulaPtr& f);

std::set<std::string> free_variables(const FormulaPtr& f);

// Removes Implies / True / False / ExistsExcl / ForallExcl. Exclusive
// quantifiers become inclusive ones guarded by disequalities against the
// free variables in scope. A standalone top expands to
// (forall x) x = x | !(forall x) x = x, and bottom to its negation.
FormulaPtr desugar(const FormulaPtr& f);

// Companion translation: rewrites inclusive quantifiers as exclusive ones,
// (exists z) f == (existsE z) f | f[z:=y1] | ... over the variables in scope.
FormulaPtr to_exclusive(const FormulaPtr& f, const std::vector<std::string>& scope = {});

// Capture-avoiding substitution of a variable by another variable.
FormulaPtr substitute_var(const FormulaPtr& f, const std::string& from, const std::string& to);

// Structural equality up to renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Structural equality on the nose.
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace folspace
