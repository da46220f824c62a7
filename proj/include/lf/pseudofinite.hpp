#pragma once

// Finite witnesses. A tree is replaced by the canonical tree of its root's
// (k,h)-color; a forest by the capped census of such trees.

#include <algorithm>
#include <string>

#include "lf/colors.hpp"
#include "lf/efgame.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/json_io.hpp"
#include "lf/logic/eval.hpp"
#include "lf/logic/formula.hpp"
#include "lf/logic/transform.hpp"

namespace lf {

/// Y of the root color of M at k = n(h+1). Rank-n L_h equivalent to M.
inline LeveledForest witness_rank(const LeveledForest& m, int n, int h) {
  if (n < 0 || h < 1) throw ContractError("witness_rank: need n >= 0 and h >= 1");
  if (!is_valid(m)) throw ContractError("witness_rank: input violates the forest axioms");
  const auto roots = m.roots();
  if (roots.size() != 1 || !m.is_leveled(roots[0])) throw ContractError("witness_rank: input must be a single leveled tree");
  const int k = n * (h + 1);
  const auto colors = coloring(HView{m, h}, k);
  return build_Y(colors[roots[0]], k, h);
}

/// Forest version: for each view-root color with capped multiplicity c,
/// c copies of its Y. Roots outside P_<=h become isolated unleveled points.
inline LeveledForest witness_forest(const LeveledForest& m, int n, int h) {
  if (n < 0 || h < 1) throw ContractError("witness_forest: need n >= 0 and h >= 1");
  if (!is_valid(m)) throw ContractError("witness_forest: input violates the forest axioms");
  const int k = n * (h + 1);
  const int cap = std::max(k, 1);
  LeveledForest out;
  for (const auto& [color, count] : root_census(HView{m, h}, k, cap)) {
    if (color.level < 0) {
      for (int i = 0; i < count; ++i) out.add_unleveled();
      continue;
    }
    const LeveledForest y = build_Y(color, k, h);
    for (int i = 0; i < count; ++i) graft(out, kNoNode, y, 0);
  }
  return out;
}

struct WitnessCertificate {
  int rank = 0;
  int h = 1;
  bool eval_translated = false;  // N satisfies translate_pred(phi, h)
  bool eval_pred = false;        // N satisfies phi read with pred directly
  bool solver_equivalent = false;

  bool passed() const { return eval_translated && eval_pred && solver_equivalent; }
};

struct FormulaWitness {
  LeveledForest model;
  WitnessCertificate certificate;
};

/// A finite N satisfying the pred-sentence phi, given a tree M of height
/// <= h that satisfies it. N = witness_rank(M, qrank(phi), h); the
/// certificate records the model checks on N and the solver's verdict on
/// the qrank(phi)-round L_h game between M and N.
inline FormulaWitness witness_formula(const LeveledForest& m, const logic::Formula& phi, int h, SolveLimits limits = {}) {
  if (h < 1) throw ContractError("witness_formula: h must be >= 1");
  if (!logic::is_sentence(phi)) throw ContractError("witness_formula: formula has free variables");
  if (m.height() > h) throw ContractError("witness_formula: tree height exceeds h");
  const logic::Formula translated = logic::translate_pred(phi, h);
  if (!logic::eval(m, translated)) throw ContractError("witness_formula: the input tree does not satisfy the formula");
  const int n = logic::qrank(phi);
  FormulaWitness out;
  out.model = witness_rank(m, n, h);
  auto& c = out.certificate;
  c.rank = n;
  c.h = h;
  c.eval_translated = logic::eval(out.model, translated);
  c.eval_pred = logic::eval(out.model, phi);
  GameConfig game;
  game.m0 = m;
  game.m1 = out.model;
  game.rounds = n;
  game.h = h;
  c.solver_equivalent = solve(game, limits) == Player::Duplicator;
  return out;
}

inline json to_json(const WitnessCertificate& c) {
  json out;
  out["rank"] = c.rank;
  out["h"] = c.h;
  out["eval_translated"] = c.eval_translated;
  out["eval_pred"] = c.eval_pred;
  out["solver_equivalent"] = c.solver_equivalent;
  out["passed"] = c.passed();
  return out;
}

}  // namespace lf
