#pragma once

// Back-and-forth trees E_k/A_k with B-fold branching, the local formulas phi_k
// separating them, finite reductions from bounded-alternation predicates,
// and the level-2i gadget whose root type records a list of such predicates.

#include <cstdint>
#include <string>
#include <vector>

#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/json_io.hpp"
#include "lf/logic/eval.hpp"
#include "lf/logic/formula.hpp"
#include "lf/logic/transform.hpp"

namespace lf {

// ---------------------------------------------------------------------------
// E_k and A_k

struct EASpec {
  enum class Kind { E, A };
  Kind kind = Kind::E;
  int k = 1;
  int B = 1;
};

namespace detail {

inline void grow_EA(LeveledForest& f, NodeId at, EASpec::Kind kind, int k, int B) {
  if (k == 1) {
    if (kind == EASpec::Kind::E)
      for (int i = 0; i < B; ++i) f.add_child(at);
    return;
  }
  if (kind == EASpec::Kind::E)
    for (int i = 0; i < B; ++i) grow_EA(f, f.add_child(at), EASpec::Kind::A, k - 1, B);
  for (int i = 0; i < B; ++i) grow_EA(f, f.add_child(at), EASpec::Kind::E, k - 1, B);
}

}  // namespace detail

inline LeveledForest build_EA(const EASpec& spec) {
  if (spec.k < 1 || spec.B < 1) throw ContractError("build_EA: k and B must be positive");
  if (spec.k > 6 || spec.B > 6) throw ResourceError("build_EA: k and B are limited to 6");
  LeveledForest f;
  detail::grow_EA(f, f.add_root(), spec.kind, spec.k, spec.B);
  return f;
}

inline LeveledForest build_E(int k, int B) { return build_EA({EASpec::Kind::E, k, B}); }
inline LeveledForest build_A(int k, int B) { return build_EA({EASpec::Kind::A, k, B}); }

inline EASpec ea_spec_from_json(const json& j) {
  try {
    EASpec s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "E") {
      s.kind = EASpec::Kind::E;
    } else if (kind == "A") {
      s.kind = EASpec::Kind::A;
    } else {
      throw ParseError("EASpec: kind must be \"E\" or \"A\"");
    }
    s.k = j.at("k").get<int>();
    s.B = j.at("B").get<int>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("EASpec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// phi_k

/// phi_k with base level l anchored at the variable `anchor`; bound
/// variables are y1..yk.
inline logic::Formula phi_at(int k, int level, const std::string& anchor) {
  using namespace logic;
  if (k < 1) throw ContractError("phi: k must be >= 1");
  // Built inside out: the innermost quantifier binds yk under y(k-1).
  auto name = [&](int depth) { return depth == 0 ? anchor : "y" + std::to_string(depth); };
  Formula f = exists_succ(name(k), level + k - 1, var(name(k - 1)), truth());
  for (int depth = k - 1; depth >= 1; --depth) f = exists_succ(name(depth), level + depth - 1, var(name(depth - 1)), neg(f));
  return f;
}

/// phi_1(x) = ex y1 in succ[l](x) . true and
/// phi_(k+1)(x) = ex y1 in succ[l](x) . ~phi_k^(l+1)(y1).
inline logic::Formula phi(int k, int level = 0) { return phi_at(k, level, "x"); }

// ---------------------------------------------------------------------------
// Bounded-alternation predicates

/// Q = ex a1 all a2 ex a3 ... R(a1..ak) with every ai ranging over 0..bound.
/// The table is row-major with a1 most significant.
struct BoundedPredicate {
  int alt = 1;
  int bound = 0;
  std::vector<char> table;

  std::size_t rows() const {
    std::size_t n = 1;
    for (int i = 0; i < alt; ++i) n *= static_cast<std::size_t>(bound + 1);
    return n;
  }
  bool at(std::size_t index) const { return table.at(index) != 0; }
};

inline void check_predicate(const BoundedPredicate& q) {
  if (q.alt < 1) throw ContractError("bounded predicate: need at least one quantifier");
  if (q.bound < 0) throw ContractError("bounded predicate: negative bound");
  double rows = 1;
  for (int i = 0; i < q.alt; ++i) rows *= q.bound + 1;
  if (rows > 1e6) throw ResourceError("bounded predicate: (N+1)^k exceeds 10^6");
  if (q.table.size() != q.rows()) throw ContractError("bounded predicate: table is not total");
}

namespace detail {

inline bool eval_bounded_from(const BoundedPredicate& q, int depth, std::size_t prefix) {
  if (depth == q.alt) return q.at(prefix);
  const bool existential = depth % 2 == 0;
  for (int a = 0; a <= q.bound; ++a) {
    const bool v = eval_bounded_from(q, depth + 1, prefix * (q.bound + 1) + a);
    if (v == existential) return existential;
  }
  return !existential;
}

inline void table_to_json(const BoundedPredicate& q, int depth, std::size_t prefix, json& out) {
  out = json::array();
  for (int a = 0; a <= q.bound; ++a) {
    const std::size_t idx = prefix * (q.bound + 1) + a;
    if (depth + 1 == q.alt) {
      out.push_back(q.at(idx));
    } else {
      json sub;
      table_to_json(q, depth + 1, idx, sub);
      out.push_back(std::move(sub));
    }
  }
}

inline void table_from_json(const json& j, int depth, const BoundedPredicate& q, std::vector<char>& out) {
  if (!j.is_array() || static_cast<int>(j.size()) != q.bound + 1)
    throw ParseError("bounded predicate: table level " + std::to_string(depth) + " must have bound+1 entries");
  for (const auto& e : j) {
    if (depth + 1 == q.alt) {
      if (!e.is_boolean()) throw ParseError("bounded predicate: table entries must be booleans");
      out.push_back(e.get<bool>() ? 1 : 0);
    } else {
      table_from_json(e, depth + 1, q, out);
    }
  }
}

}  // namespace detail

inline bool eval_bounded(const BoundedPredicate& q) {
  check_predicate(q);
  return detail::eval_bounded_from(q, 0, 0);
}

inline json to_json(const BoundedPredicate& q) {
  json out;
  out["alt"] = q.alt;
  out["bound"] = q.bound;
  json table;
  detail::table_to_json(q, 0, 0, table);
  out["table"] = std::move(table);
  return out;
}

inline BoundedPredicate predicate_from_json(const json& j) {
  BoundedPredicate q;
  try {
    q.alt = j.at("alt").get<int>();
    q.bound = j.at("bound").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bounded predicate: ") + e.what());
  }
  if (q.alt < 1 || q.bound < 0) throw ParseError("bounded predicate: need alt >= 1 and bound >= 0");
  if (!j.contains("table")) throw ParseError("bounded predicate: missing table");
  detail::table_from_json(j["table"], 0, q, q.table);
  check_predicate(q);
  return q;
}

// ---------------------------------------------------------------------------
// Reductions

namespace detail {

// Grows below `at` a tree whose top satisfies phi_r, r = alt - depth, iff
//   the suffix statement holds        (depth even: leading ex), or
//   the suffix statement fails        (depth odd: leading all).
// Either way the top satisfies phi_r iff some child c has an instantiated
// suffix making c satisfy ~phi_(r-1).
inline void grow_reduction(LeveledForest& f, NodeId at, const BoundedPredicate& q, int depth, std::size_t prefix, int B) {
  const int r = q.alt - depth;
  const bool existential = depth % 2 == 0;
  for (int a = 0; a <= q.bound; ++a) {
    const std::size_t idx = prefix * (q.bound + 1) + a;
    if (r == 1) {
      if (q.at(idx) == existential)
        for (int i = 0; i < B; ++i) f.add_child(at);
    } else {
      grow_reduction(f, f.add_child(at), q, depth + 1, idx, B);
    }
  }
  // E_(r-1) satisfies phi_(r-1), so padding never adds a witness.
  if (r > 1) {
    const LeveledForest pad = build_E(r - 1, B);
    for (int i = 0; i < B; ++i) graft(f, at, pad, 0);
  }
}

}  // namespace detail

/// A single tree whose root satisfies phi(alt, 0) exactly when Q holds.
inline LeveledForest reduce(const BoundedPredicate& q, int B) {
  check_predicate(q);
  if (B < 1) throw ContractError("reduce: B must be positive");
  LeveledForest f;
  detail::grow_reduction(f, f.add_root(), q, 0, 0, B);
  return f;
}

// ---------------------------------------------------------------------------
// Gadget

struct GadgetSpec {
  int d = 1;
  std::vector<LeveledForest> payloads;  // payload i-1 hangs at level 2i
};

struct Gadget {
  LeveledForest forest;
  std::vector<NodeId> F;  // F[0] is the root, F[i] the leaf beside G[i]
  std::vector<NodeId> G;  // G[0] unused (kNoNode)
};

inline GadgetSpec default_gadget_spec(int d, int B) {
  GadgetSpec s{d, {}};
  for (int i = 1; i <= d; ++i) s.payloads.push_back(build_E(i, B));
  return s;
}

inline Gadget build_gadget(const GadgetSpec& spec) {
  if (spec.d < 1) throw ContractError("build_gadget: depth must be >= 1");
  if (static_cast<int>(spec.payloads.size()) != spec.d)
    throw ContractError("build_gadget: expected " + std::to_string(spec.d) + " payloads");
  for (int i = 0; i < spec.d; ++i) {
    const auto& p = spec.payloads[i];
    if (p.roots().size() != 1 || !p.is_leveled(p.roots()[0]))
      throw ContractError("build_gadget: payload " + std::to_string(i + 1) + " is not a single leveled tree");
  }
  Gadget g;
  g.F.push_back(g.forest.add_root());
  g.G.push_back(kNoNode);
  for (int i = 1; i <= spec.d; ++i) {
    NodeId z = g.F[0];
    for (int l = 1; l <= 2 * i - 1; ++l) z = g.forest.add_child(z);
    g.F.push_back(g.forest.add_child(z));
    const auto& payload = spec.payloads[i - 1];
    g.G.push_back(graft(g.forest, z, payload, payload.roots()[0]));
  }
  return g;
}

namespace detail {

inline logic::Formula exactly_one_succ(const std::string& z, int level, const std::string& tag) {
  using namespace logic;
  const std::string u = "u" + tag, v = "v" + tag;
  return exists_succ(u, level, var(z), forall_succ(v, level, var(z), eq(var(u), var(v))));
}

inline logic::Formula exactly_two_succ(const std::string& z, int level, const std::string& tag) {
  using namespace logic;
  const std::string u = "u" + tag, v = "v" + tag, w = "w" + tag;
  return exists_succ(u, level, var(z),
                     exists_succ(v, level, var(z),
                                 conj(neg(eq(var(u), var(v))),
                                      forall_succ(w, level, var(z), disj(eq(var(w), var(u)), eq(var(w), var(v)))))));
}

inline logic::Formula is_leaf(const std::string& t, int level, const std::string& tag) {
  return logic::forall_succ("w" + tag, level, logic::var(t), logic::falsity());
}

// The path x <_0 z1 <_1 ... z(2i-1) with the branching conditions, closing
// with `last(z(2i-1))`.
template <typename Last>
logic::Formula gadget_path(int i, Last last) {
  using namespace logic;
  const int top = 2 * i - 1;
  auto z = [](int j) { return j == 0 ? std::string("x") : "z" + std::to_string(j); };
  Formula f = conj(exactly_two_succ(z(top), top, "t"), last(z(top)));
  f = exists_succ(z(top), top - 1, var(z(top - 1)), std::move(f));
  for (int j = top - 1; j >= 1; --j)
    f = exists_succ(z(j), j - 1, var(z(j - 1)), conj(exactly_one_succ(z(j), j, std::to_string(j)), std::move(f)));
  return f;
}

// y is a non-leaf successor of z with a leaf sibling.
inline logic::Formula g_conditions(const std::string& z, const std::string& y, int level) {
  using namespace logic;
  const Formula nonleaf = exists_succ("wy", level + 1, var(y), truth());
  const Formula sibling =
      exists_succ("s", level, var(z), conj(neg(eq(var("s"), var(y))), is_leaf("s", level + 1, "s")));
  return conj(nonleaf, sibling);
}

}  // namespace detail

/// Local formula in x (the gadget root) and y: y sits at level 2i below a
/// chain of single-successor nodes whose last node has exactly two
/// successors, y is not a leaf and has a leaf sibling.
inline logic::Formula def_formula_G(int i) {
  using namespace logic;
  if (i < 1) throw ContractError("def_formula_G: i must be >= 1");
  const int top = 2 * i - 1;
  return lf::detail::gadget_path(i, [&](const std::string& z) {
    return conj(lt(top, var(z), var("y")), lf::detail::g_conditions(z, "y", top));
  });
}

/// For i = 1..d, "phi_i shifted to level 2i holds at G_i", with G_i reached
/// by a local quantifier instead of an unbounded one; equivalent to
/// ex y (def_formula_G(i) & phi(i, 2i)(y)).
inline std::vector<logic::Formula> type_fragment(int d) {
  using namespace logic;
  if (d < 1) throw ContractError("type_fragment: d must be >= 1");
  if (d > 5) throw ResourceError("type_fragment: d is limited to 5");
  std::vector<Formula> out;
  for (int i = 1; i <= d; ++i) {
    const int top = 2 * i - 1;
    out.push_back(lf::detail::gadget_path(i, [&](const std::string& z) {
      return exists_succ("y", top, var(z), conj(lf::detail::g_conditions(z, "y", top), phi_at(i, 2 * i, "y")));
    }));
  }
  return out;
}

/// The unbounded form ex y (def_formula_G(i) & phi(i,2i)(y)); used to check
/// type_fragment.
inline logic::Formula type_fragment_unbounded(int i) {
  using namespace logic;
  return exists("y", conj(def_formula_G(i), phi_at(i, 2 * i, "y")));
}

// ---------------------------------------------------------------------------
// Demonstration

struct OmegaRow {
  int i;
  bool predicate;  // eval_bounded(Q_i)
  bool fragment;   // type_fragment formula i at the gadget root
};

struct OmegaReport {
  int d = 0;
  int B = 1;
  std::vector<OmegaRow> rows;
  bool all_predicates = true;
  bool all_fragments = true;
  int structure_size = 0;

  bool verdict_holds() const {
    for (const auto& r : rows)
      if (r.predicate != r.fragment) return false;
    return all_predicates == all_fragments;
  }
};

/// Builds the gadget with payload i = reduce(Q_i, B), places it beside
/// build_prime(2, 2) and evaluates type_fragment(d) at the gadget root.
inline OmegaReport omega_demo(const std::vector<BoundedPredicate>& qs, int B) {
  const int d = static_cast<int>(qs.size());
  if (d < 1 || d > 4) throw ContractError("omega_demo: need 1..4 predicates");
  GadgetSpec spec{d, {}};
  for (int i = 1; i <= d; ++i) {
    if (qs[i - 1].alt != i) throw ContractError("omega_demo: predicate " + std::to_string(i) + " must have " + std::to_string(i) + " alternations");
    spec.payloads.push_back(reduce(qs[i - 1], B));
  }
  const Gadget g = build_gadget(spec);
  const LeveledForest world = disjoint_union(g.forest, build_prime(2, 2));
  const auto fragment = type_fragment(d);
  OmegaReport rep;
  rep.d = d;
  rep.B = B;
  rep.structure_size = world.size();
  logic::Evaluator ev(world);
  for (int i = 1; i <= d; ++i) {
    OmegaRow row{i, eval_bounded(qs[i - 1]), ev(fragment[i - 1], {{"x", g.F[0]}})};
    rep.all_predicates = rep.all_predicates && row.predicate;
    rep.all_fragments = rep.all_fragments && row.fragment;
    rep.rows.push_back(row);
  }
  return rep;
}

inline json to_json(const OmegaReport& r) {
  json out;
  out["d"] = r.d;
  out["B"] = r.B;
  out["structure_size"] = r.structure_size;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["i"] = row.i;
    j["predicate"] = row.predicate;
    j["fragment"] = row.fragment;
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  out["all_predicates"] = r.all_predicates;
  out["all_fragments"] = r.all_fragments;
  out["verdict_holds"] = r.verdict_holds();
  return out;
}

}  // namespace lf
