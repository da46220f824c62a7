#pragma once

// First-order formulas over the leveled-forest vocabulary:
//   P[i](t)         t is on level i
//   lt[i](t,u)      t <_i u  (u is a level-(i+1) child of the level-i node t)
//   eq(t,u), true, false
//   pred(t,u)       t is the predecessor of u (the single-relation language)
// plus the usual connectives, unbounded quantifiers and the local quantifiers
//   all v in succ[i](t) . f   ==  all v . (lt[i](t,v) => f)
//   ex  v in succ[i](t) . f   ==  ex  v . (lt[i](t,v) & f)

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lf::logic {

struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  friend bool operator==(const Term&, const Term&) = default;
};

inline Term var(std::string name) { return {Term::Kind::Var, std::move(name)}; }
inline Term cst(std::string name) { return {Term::Kind::Const, std::move(name)}; }

enum class Op { True, False, P, Lt, Eq, Pred, Not, And, Or, Implies, Forall, Exists, LocalForall, LocalExists };

inline bool is_atom(Op op) { return op <= Op::Pred; }
inline bool is_quantifier(Op op) { return op >= Op::Forall; }
inline bool is_local_quantifier(Op op) { return op == Op::LocalForall || op == Op::LocalExists; }

struct Formula {
  Op op = Op::True;
  int index = 0;             // level index of P, lt and local quantifiers
  std::vector<Term> terms;   // atom arguments; the anchor term of a local quantifier
  std::string var;           // bound variable of a quantifier
  std::vector<Formula> args; // subformulas

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Builders -------------------------------------------------------------------

inline Formula truth() { return {Op::True, 0, {}, {}, {}}; }
inline Formula falsity() { return {Op::False, 0, {}, {}, {}}; }
inline Formula P(int i, Term t) { return {Op::P, i, {std::move(t)}, {}, {}}; }
inline Formula lt(int i, Term t, Term u) { return {Op::Lt, i, {std::move(t), std::move(u)}, {}, {}}; }
inline Formula eq(Term t, Term u) { return {Op::Eq, 0, {std::move(t), std::move(u)}, {}, {}}; }
inline Formula pred(Term t, Term u) { return {Op::Pred, 0, {std::move(t), std::move(u)}, {}, {}}; }
inline Formula neg(Formula f) { return {Op::Not, 0, {}, {}, {std::move(f)}}; }
inline Formula conj(Formula a, Formula b) { return {Op::And, 0, {}, {}, {std::move(a), std::move(b)}}; }
inline Formula disj(Formula a, Formula b) { return {Op::Or, 0, {}, {}, {std::move(a), std::move(b)}}; }
inline Formula implies(Formula a, Formula b) { return {Op::Implies, 0, {}, {}, {std::move(a), std::move(b)}}; }
inline Formula forall(std::string v, Formula f) { return {Op::Forall, 0, {}, std::move(v), {std::move(f)}}; }
inline Formula exists(std::string v, Formula f) { return {Op::Exists, 0, {}, std::move(v), {std::move(f)}}; }
inline Formula forall_succ(std::string v, int i, Term t, Formula f) {
  return {Op::LocalForall, i, {std::move(t)}, std::move(v), {std::move(f)}};
}
inline Formula exists_succ(std::string v, int i, Term t, Formula f) {
  return {Op::LocalExists, i, {std::move(t)}, std::move(v), {std::move(f)}};
}

/// Left-folded conjunction; the empty conjunction is `true`.
inline Formula conj_all(std::vector<Formula> fs) {
  if (fs.empty()) return truth();
  Formula out = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(std::move(out), std::move(fs[i]));
  return out;
}

/// Left-folded disjunction; the empty disjunction is `false`.
inline Formula disj_all(std::vector<Formula> fs) {
  if (fs.empty()) return falsity();
  Formula out = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) out = disj(std::move(out), std::move(fs[i]));
  return out;
}

// Queries --------------------------------------------------------------------

/// Quantifier nesting depth; local quantifiers count.
inline int qrank(const Formula& f) {
  int inner = 0;
  for (const auto& a : f.args) inner = std::max(inner, qrank(a));
  return inner + (is_quantifier(f.op) ? 1 : 0);
}

inline void collect_free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : f.terms)
    if (t.kind == Term::Kind::Var && !bound.count(t.name)) out.insert(t.name);
  if (is_quantifier(f.op)) {
    const bool fresh = bound.insert(f.var).second;
    for (const auto& a : f.args) collect_free_vars(a, bound, out);
    if (fresh) bound.erase(f.var);
  } else {
    for (const auto& a : f.args) collect_free_vars(a, bound, out);
  }
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free_vars(f, bound, out);
  return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

/// Every variable name that occurs anywhere (free or bound).
inline void collect_var_names(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms)
    if (t.kind == Term::Kind::Var) out.insert(t.name);
  if (is_quantifier(f.op)) out.insert(f.var);
  for (const auto& a : f.args) collect_var_names(a, out);
}

inline void collect_constants(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms)
    if (t.kind == Term::Kind::Const) out.insert(t.name);
  for (const auto& a : f.args) collect_constants(a, out);
}

/// Size of the syntax tree.
inline int formula_size(const Formula& f) {
  int n = 1;
  for (const auto& a : f.args) n += formula_size(a);
  return n;
}

}  // namespace lf::logic
