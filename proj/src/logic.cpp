#include "folspace/logic.hpp"

#include <algorithm>
#include <cctype>

#include "folspace/errors.hpp"

namespace folspace {

Vocabulary::Vocabulary(std::vector<Predicate> preds) : preds_(std::move(preds)) {
  for (size_t i = 0; i < preds_.size(); ++i) {
    if (preds_[i].arity < 1) throw error("predicate arity must be >= 1: " + preds_[i].name);
    if (!by_name_.emplace(preds_[i].name, static_cast<int>(i)).second)
      throw error("duplicate predicate name: " + preds_[i].name);
  }
}

std::optional<int> Vocabulary::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool Vocabulary::monadic() const {
  return std::all_of(preds_.begin(), preds_.end(), [](const Predicate& p) { return p.arity == 1; });
}

bool Vocabulary::operator==(const Vocabulary& o) const {
  if (preds_.size() != o.preds_.size()) return false;
  for (size_t i = 0; i < preds_.size(); ++i)
    if (preds_[i].name != o.preds_[i].name || preds_[i].arity != o.preds_[i].arity) return false;
  return true;
}

// ---------------------------------------------------------------- builders

namespace {
FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr Formula::atom(int pred, std::vector<std::string> args) {
  Formula f{Conn::Atom};
  f.pred = pred;
  f.args = std::move(args);
  return mk(std::move(f));
}
FormulaPtr Formula::equal(std::string a, std::string b) {
  Formula f{Conn::Equal};
  f.args = {std::move(a), std::move(b)};
  return mk(std::move(f));
}
FormulaPtr Formula::lnot(FormulaPtr x) {
  Formula f{Conn::Not};
  f.lhs = std::move(x);
  return mk(std::move(f));
}
FormulaPtr Formula::land(FormulaPtr a, FormulaPtr b) {
  Formula f{Conn::And};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk(std::move(f));
}
FormulaPtr Formula::lor(FormulaPtr a, FormulaPtr b) {
  Formula f{Conn::Or};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk(std::move(f));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  Formula f{Conn::Implies};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk(std::move(f));
}
FormulaPtr Formula::forall(std::string v, FormulaPtr x) {
  Formula f{Conn::Forall};
  f.var = std::move(v);
  f.lhs = std::move(x);
  return mk(std::move(f));
}
FormulaPtr Formula::exists(std::string v, FormulaPtr x) {
  Formula f{Conn::Exists};
  f.var = std::move(v);
  f.lhs = std::move(x);
  return mk(std::move(f));
}
FormulaPtr Formula::exists_excl(std::string v, FormulaPtr x) {
  Formula f{Conn::ExistsExcl};
  f.var = std::move(v);
  f.lhs = std::move(x);
  return mk(std::move(f));
}
FormulaPtr Formula::forall_excl(std::string v, FormulaPtr x) {
  Formula f{Conn::ForallExcl};
  f.var = std::move(v);
  f.lhs = std::move(x);
  return mk(std::move(f));
}
FormulaPtr Formula::top() { return mk(Formula{Conn::True}); }
FormulaPtr Formula::bottom() { return mk(Formula{Conn::False}); }

FormulaPtr Formula::conj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = land(out, fs[i]);
  return out;
}
FormulaPtr Formula::disj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return bottom();
  FormulaPtr out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = lor(out, fs[i]);
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
  enum Kind { Ident, LParen, RParen, Comma, Dot, Bang, Amp, Pipe, Arrow, Eq, End } kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& text) : s(text) {}

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t start = i;
    if (i >= s.size()) return {Token::End, "", start};
    char c = s[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      Token t{Token::Ident, s.substr(i, j - i), start};
      i = j;
      return t;
    }
    ++i;
    switch (c) {
      case '(': return {Token::LParen, "(", start};
      case ')': return {Token::RParen, ")", start};
      case ',': return {Token::Comma, ",", start};
      case '.': return {Token::Dot, ".", start};
      case '!': return {Token::Bang, "!", start};
      case '&': return {Token::Amp, "&", start};
      case '|': return {Token::Pipe, "|", start};
      case '=': return {Token::Eq, "=", start};
      case '<': case '>':
        // Allow '<' only as a predicate name character when registered.
        break;
      case '-':
        if (i < s.size() && s[i] == '>') {
          ++i;
          return {Token::Arrow, "->", start};
        }
        break;
      default: break;
    }
    // Single non-alphanumeric characters may name predicates (e.g. "<").
    return {Token::Ident, std::string(1, c), start};
  }
};

struct Parser {
  Lexer lex;
  Token tok;
  const Vocabulary& vocab;
  std::vector<std::string> bound;
  const std::set<std::string>& free_allowed;

  Parser(const std::string& text, const Vocabulary& v, const std::set<std::string>& fa)
      : lex(text), vocab(v), free_allowed(fa) {
    tok = lex.next();
  }

  void advance() { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, tok.pos); }

  void expect(Token::Kind k, const std::string& what) {
    if (tok.kind != k) fail("expected " + what);
    advance();
  }

  bool is_quantifier(const std::string& w) const {
    return w == "forall" || w == "exists" || w == "existsE" || w == "forallE";
  }

  FormulaPtr parse() {
    FormulaPtr f = parse_implies();
    if (tok.kind != Token::End) fail("unexpected trailing input");
    return f;
  }

  FormulaPtr parse_implies() {
    FormulaPtr a = parse_or();
    if (tok.kind == Token::Arrow) {
      advance();
      return Formula::implies(a, parse_implies());
    }
    return a;
  }

  FormulaPtr parse_or() {
    FormulaPtr a = parse_and();
    while (tok.kind == Token::Pipe) {
      advance();
      a = Formula::lor(a, parse_and());
    }
    return a;
  }

  FormulaPtr parse_and() {
    FormulaPtr a = parse_unary();
    while (tok.kind == Token::Amp) {
      advance();
      a = Formula::land(a, parse_unary());
    }
    return a;
  }

  FormulaPtr parse_unary() {
    if (tok.kind == Token::Bang) {
      advance();
      return Formula::lnot(parse_unary());
    }
    if (tok.kind == Token::Ident && is_quantifier(tok.text)) return parse_quantifier();
    return parse_primary();
  }

  FormulaPtr parse_quantifier() {
    std::string q = tok.text;
    advance();
    if (tok.kind != Token::Ident) fail("expected variable after quantifier");
    std::string v = tok.text;
    if (vocab.index_of(v)) fail("variable shadows predicate name: " + v);
    advance();
    expect(Token::Dot, "'.' after quantified variable");
    bound.push_back(v);
    FormulaPtr body = parse_implies();  // quantifier scope extends right
    bound.pop_back();
    if (q == "forall") return Formula::forall(v, body);
    if (q == "exists") return Formula::exists(v, body);
    if (q == "existsE") return Formula::exists_excl(v, body);
    return Formula::forall_excl(v, body);
  }

  void check_var(const std::string& v, size_t pos) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (free_allowed.count(v)) return;
    throw parse_error("unbound variable: " + v, pos);
  }

  FormulaPtr parse_primary() {
    if (tok.kind == Token::LParen) {
      advance();
      FormulaPtr f = parse_implies();
      expect(Token::RParen, "')'");
      return f;
    }
    if (tok.kind != Token::Ident) fail("expected formula");
    std::string name = tok.text;
    size_t pos = tok.pos;
    advance();
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    if (tok.kind == Token::LParen) {
      auto pred = vocab.index_of(name);
      if (!pred) throw parse_error("unknown predicate: " + name, pos);
      advance();
      std::vector<std::string> args;
      while (true) {
        if (tok.kind != Token::Ident) fail("expected variable in atom");
        check_var(tok.text, tok.pos);
        args.push_back(tok.text);
        advance();
        if (tok.kind == Token::Comma) {
          advance();
          continue;
        }
        break;
      }
      expect(Token::RParen, "')' after atom arguments");
      if (static_cast<int>(args.size()) != vocab.arity(*pred))
        throw parse_error("arity mismatch for " + name + ": expected " +
                              std::to_string(vocab.arity(*pred)) + ", got " +
                              std::to_string(args.size()),
                          pos);
      return Formula::atom(*pred, std::move(args));
    }
    // Infix: either "v = w" or "v P w" for a binary predicate such as "<".
    check_var(name, pos);
    if (tok.kind == Token::Eq) {
      advance();
      if (tok.kind != Token::Ident) fail("expected variable after '='");
      check_var(tok.text, tok.pos);
      std::string rhs = tok.text;
      advance();
      return Formula::equal(name, rhs);
    }
    if (tok.kind == Token::Ident) {
      auto pred = vocab.index_of(tok.text);
      if (pred && vocab.arity(*pred) == 2) {
        advance();
        if (tok.kind != Token::Ident) fail("expected variable after infix predicate");
        check_var(tok.text, tok.pos);
        std::string rhs = tok.text;
        advance();
        return Formula::atom(*pred, {name, rhs});
      }
    }
    fail("expected atom");
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab,
                         const std::set<std::string>& free_allowed) {
  Parser p(text, vocab, free_allowed);
  return p.parse();
}

FormulaPtr parse_sentence(const std::string& text, const Vocabulary& vocab) {
  return parse_formula(text, vocab, {});
}

// ---------------------------------------------------------------- printer

namespace {

// Precedence levels: quantifier body 0, -> 1, | 2, & 3, unary 4.
void print_rec(const FormulaPtr& f, const Vocabulary& vocab, int parent_prec, std::string& out) {
  auto parens = [&](int prec, auto&& body) {
    bool need = prec < parent_prec;
    if (need) out += "(";
    body();
    if (need) out += ")";
  };
  switch (f->kind) {
    case Conn::True: out += "true"; return;
    case Conn::False: out += "false"; return;
    case Conn::Atom: {
      const std::string& n = vocab.name(f->pred);
      bool infix_name = !std::isalpha(static_cast<unsigned char>(n[0])) && n != "_";
      if (infix_name && f->args.size() == 2) {
        parens(4, [&] { out += f->args[0] + " " + n + " " + f->args[1]; });
      } else {
        out += n + "(";
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ",";
          out += f->args[i];
        }
        out += ")";
      }
      return;
    }
    case Conn::Equal:
      parens(4, [&] { out += f->args[0] + " = " + f->args[1]; });
      return;
    case Conn::Not:
      out += "!";
      print_rec(f->lhs, vocab, 4, out);
      return;
    case Conn::And:
      parens(3, [&] {
        print_rec(f->lhs, vocab, 3, out);
        out += " & ";
        print_rec(f->rhs, vocab, 4, out);
      });
      return;
    case Conn::Or:
      parens(2, [&] {
        print_rec(f->lhs, vocab, 2, out);
        out += " | ";
        print_rec(f->rhs, vocab, 3, out);
      });
      return;
    case Conn::Implies:
      parens(1, [&] {
        print_rec(f->lhs, vocab, 2, out);
        out += " -> ";
        print_rec(f->rhs, vocab, 1, out);
      });
      return;
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl:
      parens(1, [&] {
        switch (f->kind) {
          case Conn::Forall: out += "forall "; break;
          case Conn::Exists: out += "exists "; break;
          case Conn::ExistsExcl: out += "existsE "; break;
          default: out += "forallE "; break;
        }
        out += f->var + ". ";
        print_rec(f->lhs, vocab, 0, out);
      });
      return;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f, const Vocabulary& vocab) {
  std::string out;
  print_rec(f, vocab, 0, out);
  return out;
}

// ---------------------------------------------------------------- utilities

int quantifier_rank(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Atom:
    case Conn::Equal:
    case Conn::True:
    case Conn::False: return 0;
    case Conn::Not: return quantifier_rank(f->lhs);
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return std::max(quantifier_rank(f->lhs), quantifier_rank(f->rhs));
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl: return 1 + quantifier_rank(f->lhs);
  }
  return 0;
}

namespace {
void free_vars_rec(const FormulaPtr& f, std::vector<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Atom:
    case Conn::Equal:
      for (const auto& v : f->args)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    case Conn::True:
    case Conn::False: return;
    case Conn::Not: free_vars_rec(f->lhs, bound, out); return;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      free_vars_rec(f->lhs, bound, out);
      free_vars_rec(f->rhs, bound, out);
      return;
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl:
      bound.push_back(f->var);
      free_vars_rec(f->lhs, bound, out);
      bound.pop_back();
      return;
  }
}
}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  free_vars_rec(f, bound, out);
  return out;
}

namespace {

std::string fresh_var(const std::set<std::string>& taken, const std::string& base) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

FormulaPtr desugar_rec(const FormulaPtr& f, std::vector<std::string>& scope) {
  switch (f->kind) {
    case Conn::Atom:
    case Conn::Equal: return f;
    case Conn::True: {
      // top == (forall x) x = x | !(forall x) x = x
      std::set<std::string> taken(scope.begin(), scope.end());
      std::string v = fresh_var(taken, "x");
      FormulaPtr all = Formula::forall(v, Formula::equal(v, v));
      return Formula::lor(all, Formula::lnot(all));
    }
    case Conn::False: {
      std::set<std::string> taken(scope.begin(), scope.end());
      std::string v = fresh_var(taken, "x");
      FormulaPtr all = Formula::forall(v, Formula::equal(v, v));
      return Formula::land(all, Formula::lnot(all));
    }
    case Conn::Not: return Formula::lnot(desugar_rec(f->lhs, scope));
    case Conn::And: return Formula::land(desugar_rec(f->lhs, scope), desugar_rec(f->rhs, scope));
    case Conn::Or: return Formula::lor(desugar_rec(f->lhs, scope), desugar_rec(f->rhs, scope));
    case Conn::Implies:
      return Formula::lor(Formula::lnot(desugar_rec(f->lhs, scope)), desugar_rec(f->rhs, scope));
    case Conn::Forall:
    case Conn::Exists: {
      scope.push_back(f->var);
      FormulaPtr body = desugar_rec(f->lhs, scope);
      scope.pop_back();
      return f->kind == Conn::Forall ? Formula::forall(f->var, body)
                                     : Formula::exists(f->var, body);
    }
    case Conn::ExistsExcl:
    case Conn::ForallExcl: {
      // (existsE z) f == (exists z) z != y1 & ... & z != yk & f over the
      // distinct variables in scope; forallE dually.
      std::vector<FormulaPtr> guards;
      for (const auto& y : scope)
        if (y != f->var) guards.push_back(Formula::lnot(Formula::equal(f->var, y)));
      scope.push_back(f->var);
      FormulaPtr body = desugar_rec(f->lhs, scope);
      scope.pop_back();
      if (f->kind == Conn::ExistsExcl) {
        guards.push_back(body);
        return Formula::exists(f->var, Formula::conj(guards));
      }
      // (forallE z) f == !(existsE z) !f
      guards.push_back(Formula::lnot(body));
      return Formula::lnot(Formula::exists(f->var, Formula::conj(guards)));
    }
  }
  return f;
}

}  // namespace

namespace {

// Propagates boolean constants upward so true/false survive only as the
// whole formula; quantifiers over bare constants collapse under the
// nonempty-domain convention (exclusive quantifiers are left alone).
FormulaPtr simplify_bools(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Atom:
    case Conn::Equal:
    case Conn::True:
    case Conn::False: return f;
    case Conn::Not: {
      FormulaPtr a = simplify_bools(f->lhs);
      if (a->kind == Conn::True) return Formula::bottom();
      if (a->kind == Conn::False) return Formula::top();
      return Formula::lnot(a);
    }
    case Conn::And: {
      FormulaPtr a = simplify_bools(f->lhs), b = simplify_bools(f->rhs);
      if (a->kind == Conn::False || b->kind == Conn::False) return Formula::bottom();
      if (a->kind == Conn::True) return b;
      if (b->kind == Conn::True) return a;
      return Formula::land(a, b);
    }
    case Conn::Or: {
      FormulaPtr a = simplify_bools(f->lhs), b = simplify_bools(f->rhs);
      if (a->kind == Conn::True || b->kind == Conn::True) return Formula::top();
      if (a->kind == Conn::False) return b;
      if (b->kind == Conn::False) return a;
      return Formula::lor(a, b);
    }
    case Conn::Implies: {
      FormulaPtr a = simplify_bools(f->lhs), b = simplify_bools(f->rhs);
      if (a->kind == Conn::False || b->kind == Conn::True) return Formula::top();
      if (a->kind == Conn::True) return b;
      if (b->kind == Conn::False) return Formula::lnot(a);
      return Formula::implies(a, b);
    }
    case Conn::Forall:
    case Conn::Exists: {
      FormulaPtr a = simplify_bools(f->lhs);
      if (a->kind == Conn::True || a->kind == Conn::False) return a;
      return f->kind == Conn::Forall ? Formula::forall(f->var, a) : Formula::exists(f->var, a);
    }
    case Conn::ExistsExcl: {
      FormulaPtr a = simplify_bools(f->lhs);
      return Formula::exists_excl(f->var, a);
    }
    case Conn::ForallExcl: {
      FormulaPtr a = simplify_bools(f->lhs);
      return Formula::forall_excl(f->var, a);
    }
  }
  return f;
}

}  // namespace

FormulaPtr desugar(const FormulaPtr& f) {
  FormulaPtr s = simplify_bools(f);
  auto fv = free_variables(s);
  std::vector<std::string> scope(fv.begin(), fv.end());
  return desugar_rec(s, scope);
}

namespace {
FormulaPtr to_excl_rec(const FormulaPtr& f, std::vector<std::string>& scope) {
  switch (f->kind) {
    case Conn::Atom:
    case Conn::Equal:
    case Conn::True:
    case Conn::False: return f;
    case Conn::Not: return Formula::lnot(to_excl_rec(f->lhs, scope));
    case Conn::And: return Formula::land(to_excl_rec(f->lhs, scope), to_excl_rec(f->rhs, scope));
    case Conn::Or: return Formula::lor(to_excl_rec(f->lhs, scope), to_excl_rec(f->rhs, scope));
    case Conn::Implies:
      return Formula::implies(to_excl_rec(f->lhs, scope), to_excl_rec(f->rhs, scope));
    case Conn::ExistsExcl:
    case Conn::ForallExcl: {
      scope.push_back(f->var);
      FormulaPtr body = to_excl_rec(f->lhs, scope);
      scope.pop_back();
      return f->kind == Conn::ExistsExcl ? Formula::exists_excl(f->var, body)
                                         : Formula::forall_excl(f->var, body);
    }
    case Conn::Exists: {
      // (exists z) f == (existsE z) f | f[z:=y1] | ... | f[z:=yk]
      std::vector<std::string> outer = scope;
      scope.push_back(f->var);
      FormulaPtr body = to_excl_rec(f->lhs, scope);
      scope.pop_back();
      std::vector<FormulaPtr> cases;
      cases.push_back(Formula::exists_excl(f->var, body));
      for (const auto& y : outer)
        if (y != f->var) cases.push_back(substitute_var(body, f->var, y));
      return Formula::disj(cases);
    }
    case Conn::Forall: {
      std::vector<std::string> outer = scope;
      scope.push_back(f->var);
      FormulaPtr body = to_excl_rec(f->lhs, scope);
      scope.pop_back();
      std::vector<FormulaPtr> cases;
      cases.push_back(Formula::forall_excl(f->var, body));
      for (const auto& y : outer)
        if (y != f->var) cases.push_back(substitute_var(body, f->var, y));
      return Formula::conj(cases);
    }
  }
  return f;
}
}  // namespace

FormulaPtr to_exclusive(const FormulaPtr& f, const std::vector<std::string>& scope) {
  std::vector<std::string> s = scope;
  return to_excl_rec(f, s);
}

FormulaPtr substitute_var(const FormulaPtr& f, const std::string& from, const std::string& to) {
  switch (f->kind) {
    case Conn::Atom: {
      std::vector<std::string> args = f->args;
      for (auto& a : args)
        if (a == from) a = to;
      return Formula::atom(f->pred, std::move(args));
    }
    case Conn::Equal: {
      auto a = f->args[0] == from ? to : f->args[0];
      auto b = f->args[1] == from ? to : f->args[1];
      return Formula::equal(a, b);
    }
    case Conn::True:
    case Conn::False: return f;
    case Conn::Not: return Formula::lnot(substitute_var(f->lhs, from, to));
    case Conn::And:
      return Formula::land(substitute_var(f->lhs, from, to), substitute_var(f->rhs, from, to));
    case Conn::Or:
      return Formula::lor(substitute_var(f->lhs, from, to), substitute_var(f->rhs, from, to));
    case Conn::Implies:
      return Formula::implies(substitute_var(f->lhs, from, to), substitute_var(f->rhs, from, to));
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl: {
      if (f->var == from) return f;  // shadowed
      std::string v = f->var;
      FormulaPtr body = f->lhs;
      if (v == to) {
        // Rename the binder to avoid capturing the substituted variable.
        std::set<std::string> taken = free_variables(body);
        taken.insert(from);
        taken.insert(to);
        std::string nv = fresh_var(taken, v);
        body = substitute_var(body, v, nv);
        v = nv;
      }
      body = substitute_var(body, from, to);
      switch (f->kind) {
        case Conn::Forall: return Formula::forall(v, body);
        case Conn::Exists: return Formula::exists(v, body);
        case Conn::ExistsExcl: return Formula::exists_excl(v, body);
        default: return Formula::forall_excl(v, body);
      }
    }
  }
  return f;
}

namespace {
bool alpha_rec(const FormulaPtr& a, const FormulaPtr& b, std::vector<std::string>& ba,
               std::vector<std::string>& bb) {
  if (a->kind != b->kind) return false;
  auto var_index = [](const std::vector<std::string>& bound, const std::string& v) -> int {
    for (size_t i = bound.size(); i-- > 0;)
      if (bound[i] == v) return static_cast<int>(i);
    return -1;
  };
  switch (a->kind) {
    case Conn::Atom:
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      [[fallthrough]];
    case Conn::Equal:
      for (size_t i = 0; i < a->args.size(); ++i) {
        int ia = var_index(ba, a->args[i]), ib = var_index(bb, b->args[i]);
        if (ia != ib) return false;
        if (ia == -1 && a->args[i] != b->args[i]) return false;  // free variables by name
      }
      return true;
    case Conn::True:
    case Conn::False: return true;
    case Conn::Not: return alpha_rec(a->lhs, b->lhs, ba, bb);
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return alpha_rec(a->lhs, b->lhs, ba, bb) && alpha_rec(a->rhs, b->rhs, ba, bb);
    case Conn::Forall:
    case Conn::Exists:
    case Conn::ExistsExcl:
    case Conn::ForallExcl: {
      ba.push_back(a->var);
      bb.push_back(b->var);
      bool ok = alpha_rec(a->lhs, b->lhs, ba, bb);
      ba.pop_back();
      bb.pop_back();
      return ok;
    }
  }
  return false;
}
}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  std::vector<std::string> ba, bb;
  return alpha_rec(a, b, ba, bb);
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind || a->pred != b->pred || a->args != b->args || a->var != b->var)
    return false;
  if (!!a->lhs != !!b->lhs || !!a->rhs != !!b->rhs) return false;
  if (a->lhs && !formula_equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !formula_equal(a->rhs, b->rhs)) return false;
  return true;
}

}  // namespace folspace
