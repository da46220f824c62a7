#pragma once

// Seeded random structures, formulas and predicates for property tests and
// the acceptance suite. Every generator takes the engine by reference, so a
// run is reproducible from its seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lf/forest.hpp"
#include "lf/hardness.hpp"
#include "lf/logic/formula.hpp"
#include "lf/logic/transform.hpp"

namespace lf {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// A forest of exactly `size` nodes with height <= max_height. New nodes
/// become roots with probability root_bias; otherwise they attach below a
/// uniformly chosen node that still has room above it.
inline LeveledForest random_forest(Rng& rng, int size, int max_height, double root_bias = 0.25, int unleveled = 0) {
  LeveledForest f;
  for (int i = 0; i < size; ++i) {
    std::vector<NodeId> open;
    for (NodeId x = 0; x < f.size(); ++x)
      if (f.is_leveled(x) && f.level(x) < max_height) open.push_back(x);
    if (open.empty() || coin(rng, root_bias)) {
      f.add_root();
    } else {
      f.add_child(open[uniform_int(rng, 0, static_cast<int>(open.size()) - 1)]);
    }
  }
  for (int i = 0; i < unleveled; ++i) f.add_unleveled();
  return f;
}

/// A single tree of exactly `size` nodes with height <= max_height.
inline LeveledForest random_tree(Rng& rng, int size, int max_height) {
  LeveledForest f;
  f.add_root();
  for (int i = 1; i < size; ++i) {
    std::vector<NodeId> open;
    for (NodeId x = 0; x < f.size(); ++x)
      if (f.level(x) < max_height) open.push_back(x);
    if (open.empty()) break;
    f.add_child(open[uniform_int(rng, 0, static_cast<int>(open.size()) - 1)]);
  }
  return f;
}

struct FormulaOptions {
  int max_rank = 2;
  int max_size = 6;       // soft budget on connectives
  int max_index = 2;      // P[i] uses i <= max_index, lt[i] uses i < max_index
  bool level_atoms = true;  // P and lt
  bool pred_atoms = false;
  bool local_quantifiers = false;
  bool unbounded_quantifiers = true;
};

namespace detail {

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const FormulaOptions& opt) : rng_(rng), opt_(opt) {}

  logic::Formula gen(std::vector<std::string>& scope, int rank, int budget) {
    using namespace logic;
    const bool can_quantify = rank > 0 && (opt_.unbounded_quantifiers || (opt_.local_quantifiers && !scope.empty()));
    const int roll = uniform_int(rng_, 0, 9);
    if (scope.empty()) {
      if (can_quantify) return quantify(scope, rank, budget);
      return coin(rng_) ? truth() : falsity();
    }
    if (budget <= 0 || roll < 3) return atom(scope);
    if (roll < 5 || !can_quantify) {
      const int op = uniform_int(rng_, 0, 3);
      if (op == 0) return neg(gen(scope, rank, budget - 1));
      Formula a = gen(scope, rank, budget / 2);
      Formula b = gen(scope, rank, budget / 2);
      if (op == 1) return conj(std::move(a), std::move(b));
      if (op == 2) return disj(std::move(a), std::move(b));
      return implies(std::move(a), std::move(b));
    }
    return quantify(scope, rank, budget);
  }

 private:
  logic::Formula quantify(std::vector<std::string>& scope, int rank, int budget) {
    using namespace logic;
    const std::string v = "v" + std::to_string(scope.size());
    const bool local = opt_.local_quantifiers && !scope.empty() && (!opt_.unbounded_quantifiers || coin(rng_));
    const bool universal = coin(rng_);
    if (local) {
      const std::string anchor = pick(scope);
      const int idx = uniform_int(rng_, 0, std::max(0, opt_.max_index - 1));
      scope.push_back(v);
      Formula body = gen(scope, rank - 1, budget - 1);
      scope.pop_back();
      return universal ? forall_succ(v, idx, var(anchor), std::move(body)) : exists_succ(v, idx, var(anchor), std::move(body));
    }
    scope.push_back(v);
    Formula body = gen(scope, rank - 1, budget - 1);
    scope.pop_back();
    return universal ? forall(v, std::move(body)) : exists(v, std::move(body));
  }

  logic::Formula atom(const std::vector<std::string>& scope) {
    using namespace logic;
    std::vector<int> kinds{0};  // eq
    if (opt_.level_atoms) {
      kinds.push_back(1);
      kinds.push_back(2);
    }
    if (opt_.pred_atoms) kinds.push_back(3);
    const int kind = kinds[uniform_int(rng_, 0, static_cast<int>(kinds.size()) - 1)];
    const Term t = var(pick(scope)), u = var(pick(scope));
    switch (kind) {
      case 1: return P(uniform_int(rng_, 0, opt_.max_index), t);
      case 2: return lt(uniform_int(rng_, 0, std::max(0, opt_.max_index - 1)), t, u);
      case 3: return pred(t, u);
      default: return eq(t, u);
    }
  }

  std::string pick(const std::vector<std::string>& scope) {
    return scope[uniform_int(rng_, 0, static_cast<int>(scope.size()) - 1)];
  }

  Rng& rng_;
  const FormulaOptions& opt_;
};

}  // namespace detail

/// Random formula whose free variables are among `free`.
inline logic::Formula random_formula(Rng& rng, const FormulaOptions& opt, std::vector<std::string> free = {}) {
  return detail::FormulaGen(rng, opt).gen(free, opt.max_rank, opt.max_size);
}

/// Sentence over L_h (P[0..h], lt[0..h-1], eq).
inline logic::Formula random_lh_sentence(Rng& rng, int h, int rank, int size = 6) {
  FormulaOptions opt;
  opt.max_rank = rank;
  opt.max_size = size;
  opt.max_index = h;
  return random_formula(rng, opt);
}

/// Sentence over pred and eq.
inline logic::Formula random_pred_sentence(Rng& rng, int rank, int size = 6) {
  FormulaOptions opt;
  opt.max_rank = rank;
  opt.max_size = size;
  opt.level_atoms = false;
  opt.pred_atoms = true;
  return random_formula(rng, opt);
}

/// Local formula with the single free variable x.
inline logic::Formula random_local_formula(Rng& rng, int rank, int max_index = 2, int size = 6) {
  using namespace logic;
  FormulaOptions opt;
  opt.max_rank = rank;
  opt.max_size = size;
  opt.max_index = max_index;
  opt.local_quantifiers = true;
  opt.unbounded_quantifiers = false;
  Formula f = random_formula(rng, opt, {"x"});
  // No implications in local formulas; push them out.
  return nnf(f);
}

inline BoundedPredicate random_predicate(Rng& rng, int alt, int bound, double p_true = 0.5) {
  BoundedPredicate q;
  q.alt = alt;
  q.bound = bound;
  q.table.resize(q.rows());
  for (auto& c : q.table) c = coin(rng, p_true) ? 1 : 0;
  return q;
}

}  // namespace lf
