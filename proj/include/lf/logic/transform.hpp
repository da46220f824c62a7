#pragma once

// Syntactic transformations: negation normal form, locality, upshift, the
// base-theory axioms, and the translation between the single-relation
// {pred} language and the leveled vocabulary.

#include <set>
#include <string>
#include <vector>

#include "lf/errors.hpp"
#include "lf/logic/formula.hpp"

namespace lf::logic {

/// Negation normal form: negations sit directly on atoms, '=>' is eliminated.
inline Formula nnf(const Formula& f, bool negate = false) {
  switch (f.op) {
    case Op::True: return negate ? falsity() : truth();
    case Op::False: return negate ? truth() : falsity();
    case Op::P:
    case Op::Lt:
    case Op::Eq:
    case Op::Pred: return negate ? neg(f) : f;
    case Op::Not: return nnf(f.args[0], !negate);
    case Op::And:
      return negate ? disj(nnf(f.args[0], true), nnf(f.args[1], true)) : conj(nnf(f.args[0]), nnf(f.args[1]));
    case Op::Or:
      return negate ? conj(nnf(f.args[0], true), nnf(f.args[1], true)) : disj(nnf(f.args[0]), nnf(f.args[1]));
    case Op::Implies:
      return negate ? conj(nnf(f.args[0]), nnf(f.args[1], true)) : disj(nnf(f.args[0], true), nnf(f.args[1]));
    case Op::Forall:
      return negate ? exists(f.var, nnf(f.args[0], true)) : forall(f.var, nnf(f.args[0]));
    case Op::Exists:
      return negate ? forall(f.var, nnf(f.args[0], true)) : exists(f.var, nnf(f.args[0]));
    case Op::LocalForall:
      return negate ? exists_succ(f.var, f.index, f.terms[0], nnf(f.args[0], true))
                    : forall_succ(f.var, f.index, f.terms[0], nnf(f.args[0]));
    case Op::LocalExists:
      return negate ? forall_succ(f.var, f.index, f.terms[0], nnf(f.args[0], true))
                    : exists_succ(f.var, f.index, f.terms[0], nnf(f.args[0]));
  }
  return f;
}

namespace detail {

inline bool local_nnf(const Formula& f) {
  switch (f.op) {
    case Op::Forall:
    case Op::Exists:
    case Op::Implies: return false;
    case Op::Not: return is_atom(f.args[0].op);
    default: break;
  }
  for (const auto& a : f.args)
    if (!local_nnf(a)) return false;
  return true;
}

}  // namespace detail

/// Syntactic locality: after NNF the formula is built from (negated) atoms
/// with '&', '|' and successor-bounded quantifiers only.
inline bool is_local(const Formula& f) { return detail::local_nnf(nnf(f)); }

/// Shifts every level index (P, lt, succ) up by k. Defined for local formulas
/// only.
inline Formula upshift(const Formula& f, int k) {
  if (k < 0) throw ContractError("upshift: negative shift");
  if (!is_local(f)) throw ContractError("upshift: formula is not local");
  struct Shift {
    int k;
    Formula operator()(const Formula& g) const {
      Formula out = g;
      if (g.op == Op::P || g.op == Op::Lt || is_local_quantifier(g.op)) out.index += k;
      for (auto& a : out.args) a = (*this)(a);
      return out;
    }
  };
  return Shift{k}(f);
}

/// Base-theory axiom instances for indices i < h_max: four sentences per
/// index (disjointness of P_i from P_0..P_h_max, <_i inside P_i x P_(i+1),
/// existence and uniqueness of predecessors).
inline std::vector<Formula> axioms_T0(int h_max) {
  if (h_max < 1) throw ContractError("axioms_T0: h_max must be >= 1");
  const Term x = var("x"), y = var("y"), z = var("z");
  std::vector<Formula> out;
  for (int i = 0; i < h_max; ++i) {
    std::vector<Formula> others;
    for (int j = 0; j <= h_max; ++j)
      if (j != i) others.push_back(neg(P(j, x)));
    out.push_back(forall("x", implies(P(i, x), conj_all(others))));
    out.push_back(forall("x", forall("y", implies(lt(i, x, y), conj(P(i, x), P(i + 1, y))))));
    out.push_back(forall("x", implies(P(i + 1, x), exists("y", conj(P(i, y), lt(i, y, x))))));
    out.push_back(forall("x", forall("y", forall("z", implies(conj(lt(i, x, z), lt(i, y, z)), eq(x, y))))));
  }
  return out;
}

/// True iff f only uses pred, eq, true/false and unbounded quantifiers.
inline bool is_pred_formula(const Formula& f) {
  if (f.op == Op::P || f.op == Op::Lt || is_local_quantifier(f.op)) return false;
  for (const auto& a : f.args)
    if (!is_pred_formula(a)) return false;
  return true;
}

/// pred(t,u) becomes lt[0](t,u) | ... | lt[h-1](t,u). Quantifier rank is
/// unchanged.
inline Formula translate_pred(const Formula& f, int h) {
  if (h < 1) throw ContractError("translate_pred: h must be >= 1");
  if (!is_pred_formula(f)) throw ContractError("translate_pred: input is not a pred-formula");
  struct Tr {
    int h;
    Formula operator()(const Formula& g) const {
      if (g.op == Op::Pred) {
        std::vector<Formula> alts;
        for (int i = 0; i < h; ++i) alts.push_back(lt(i, g.terms[0], g.terms[1]));
        return disj_all(std::move(alts));
      }
      Formula out = g;
      for (auto& a : out.args) a = (*this)(a);
      return out;
    }
  };
  return Tr{h}(f);
}

namespace detail {

class BackTranslator {
 public:
  explicit BackTranslator(const Formula& f) { collect_var_names(f, used_); }

  Formula operator()(const Formula& g) {
    switch (g.op) {
      case Op::P: return level_is(g.terms[0], g.index);
      case Op::Lt: return conj(conj(pred(g.terms[0], g.terms[1]), level_is(g.terms[0], g.index)), level_is(g.terms[1], g.index + 1));
      case Op::LocalForall:
      case Op::LocalExists: {
        Formula guard = (*this)(lt(g.index, g.terms[0], var(g.var)));
        Formula body = (*this)(g.args[0]);
        return g.op == Op::LocalForall ? forall(g.var, implies(std::move(guard), std::move(body)))
                                       : exists(g.var, conj(std::move(guard), std::move(body)));
      }
      default: {
        Formula out = g;
        for (auto& a : out.args) a = (*this)(a);
        return out;
      }
    }
  }

 private:
  std::string fresh() {
    for (;;) {
      std::string v = "w" + std::to_string(counter_++);
      if (used_.insert(v).second) return v;
    }
  }

  // t reaches a pred-minimal node in exactly i steps and not in i+1 steps.
  Formula level_is(const Term& t, int i) { return conj(chain_to_root(t, i), neg(chain_to_root(t, i + 1))); }

  Formula chain_to_root(const Term& t, int steps) {
    if (steps == 0) {
      const std::string w = fresh();
      return neg(exists(w, pred(var(w), t)));
    }
    const std::string z = fresh();
    return exists(z, conj(pred(var(z), t), chain_to_root(var(z), steps - 1)));
  }

  int counter_ = 0;
  std::set<std::string> used_;
};

}  // namespace detail

/// Expresses an L_h formula with pred alone: P[i](t) says t reaches a
/// pred-minimal node in exactly i steps; lt[i] is pred restricted to levels
/// i and i+1; local quantifiers are unfolded. Each atom P[i] adds i+2
/// quantifiers of depth, so the rank grows by at most h+2 on L_h input.
inline Formula translate_back(const Formula& f, int h) {
  if (h < 1) throw ContractError("translate_back: h must be >= 1");
  return detail::BackTranslator(f)(f);
}

}  // namespace lf::logic
