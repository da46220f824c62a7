#pragma once

// Ehrenfeucht-Fraisse games between h-views of leveled forests.
//
// Two independent pieces live here. Solver is the exhaustive minimax oracle;
// ColorStrategy is the duplicator strategy driven by (k,h)-colors. They share
// only the data model and the end-of-play win check (find_violation).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lf/colors.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"

namespace lf {

enum class Player { Spoiler, Duplicator };  // the universal and existential player

inline const char* player_code(Player p) { return p == Player::Spoiler ? "A" : "E"; }

struct GameConfig {
  LeveledForest m0;
  LeveledForest m1;
  std::vector<NodeId> a0;  // initial pebbles, paired position-wise with a1
  std::vector<NodeId> a1;
  int rounds = 0;
  int h = 1;
  /// Spoiler may only pick nodes whose view predecessor is already pebbled.
  bool prolonged = false;
  /// Constant tags join the language: equally tagged nodes are pebbled from
  /// the start.
  bool with_constants = false;
};

/// (node in m0, node in m1)
using PebblePair = std::pair<NodeId, NodeId>;
using Position = std::vector<PebblePair>;

inline const LeveledForest& side_of(const GameConfig& cfg, int side) { return side == 0 ? cfg.m0 : cfg.m1; }

// ---------------------------------------------------------------------------
// Win condition

/// Initial pebbles: the tuples plus, with constants, one pair per tag. Sets
/// `mismatch` when the two structures interpret different constants.
struct InitialPosition {
  Position pairs;
  std::optional<std::string> mismatch;
};

inline InitialPosition initial_position(const GameConfig& cfg) {
  if (cfg.a0.size() != cfg.a1.size()) throw ContractError("game: initial tuples differ in length");
  InitialPosition out;
  for (std::size_t i = 0; i < cfg.a0.size(); ++i) {
    if (cfg.a0[i] < 0 || cfg.a0[i] >= cfg.m0.size() || cfg.a1[i] < 0 || cfg.a1[i] >= cfg.m1.size())
      throw ContractError("game: initial pebble out of range");
    out.pairs.emplace_back(cfg.a0[i], cfg.a1[i]);
  }
  if (cfg.with_constants) {
    std::map<std::string, NodeId> t0, t1;
    for (NodeId x = 0; x < cfg.m0.size(); ++x)
      if (cfg.m0.has_tag(x)) t0[cfg.m0.tag(x)] = x;
    for (NodeId y = 0; y < cfg.m1.size(); ++y)
      if (cfg.m1.has_tag(y)) t1[cfg.m1.tag(y)] = y;
    for (const auto& [tag, x] : t0) {
      auto it = t1.find(tag);
      if (it == t1.end()) {
        out.mismatch = "constant #" + tag + " is interpreted in m0 only";
        return out;
      }
      out.pairs.emplace_back(x, it->second);
    }
    for (const auto& [tag, y] : t1)
      if (!t0.count(tag)) {
        out.mismatch = "constant #" + tag + " is interpreted in m1 only";
        return out;
      }
  }
  return out;
}

/// First atomic condition (of P_i for i <= h, <_i for i < h, equality and,
/// with constants, tags) on which the pebbled map fails to be a partial
/// isomorphism; nullopt if it is one.
inline std::optional<std::string> find_violation(const GameConfig& cfg, const Position& pos) {
  const HView v0{cfg.m0, cfg.h}, v1{cfg.m1, cfg.h};
  auto name = [](const PebblePair& p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; };
  for (const auto& p : pos) {
    if (v0.level(p.first) != v1.level(p.second)) {
      const int l = std::max(v0.level(p.first), v1.level(p.second));
      return "P[" + std::to_string(l) + "] differs on pair " + name(p);
    }
    if (cfg.with_constants && cfg.m0.tag(p.first) != cfg.m1.tag(p.second)) return "constant tag differs on pair " + name(p);
  }
  for (const auto& p : pos)
    for (const auto& q : pos) {
      if ((p.first == q.first) != (p.second == q.second)) return "eq differs on pairs " + name(p) + " " + name(q);
      const bool e0 = v0.parent(q.first) == p.first;
      const bool e1 = v1.parent(q.second) == p.second;
      if (e0 != e1) {
        const int l = e0 ? v0.level(p.first) : v1.level(p.second);
        return "lt[" + std::to_string(l) + "] differs on pairs " + name(p) + " " + name(q);
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exhaustive solver

struct SolveLimits {
  int max_nodes = 14;
  int max_rounds = 4;
  std::size_t max_states = 20'000'000;
};

class Solver {
 public:
  explicit Solver(const GameConfig& cfg, SolveLimits limits = {}) : cfg_(cfg), limits_(limits) {
    if (cfg.m0.size() > limits.max_nodes || cfg.m1.size() > limits.max_nodes)
      throw ResourceError("solve: structures exceed " + std::to_string(limits.max_nodes) + " nodes");
    if (cfg.rounds > limits.max_rounds)
      throw ResourceError("solve: " + std::to_string(cfg.rounds) + " rounds exceed limit " + std::to_string(limits.max_rounds));
    if (cfg.rounds < 0) throw ContractError("solve: negative round count");
    for (int s = 0; s < 2; ++s) {
      const LeveledForest& f = side_of(cfg, s);
      const HView v{f, cfg.h};
      auto& info = side_[s];
      info.level.resize(f.size());
      info.parent.resize(f.size());
      info.tag.resize(f.size());
      for (NodeId x = 0; x < f.size(); ++x) {
        info.level[x] = v.level(x);
        info.parent[x] = v.parent(x);
        info.tag[x] = cfg.with_constants ? f.tag(x) : std::string{};
        info.by_level[info.level[x]].push_back(x);
      }
      // Try nodes with matching out-degree first; a cheap ordering only.
      for (auto& [l, ids] : info.by_level) {
        std::stable_sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
          return v.children(a).size() > v.children(b).size();
        });
      }
    }
  }

  Player winner() {
    const auto init = initial_position(cfg_);
    if (init.mismatch) return Player::Spoiler;
    Position pos;
    for (const auto& p : init.pairs) {
      if (!consistent(pos, p)) return Player::Spoiler;
      pos.push_back(p);
    }
    return duplicator_wins(pos, cfg_.rounds) ? Player::Duplicator : Player::Spoiler;
  }

  /// pos must already be a partial isomorphism.
  bool duplicator_wins(const Position& pos, int remaining) {
    if (remaining <= 0) return true;
    const std::string key = memo_key(pos, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limits_.max_states) throw ResourceError("solve: state limit exceeded");
    bool result = true;
    for (int s = 0; s < 2 && result; ++s) {
      const int n = side_of(cfg_, s).size();
      for (NodeId x = 0; x < n && result; ++x) {
        if (!spoiler_may_pick(pos, s, x)) continue;
        if (!reply(pos, remaining, s, x)) result = false;
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  /// A duplicator reply to spoiler's pick (side, x) that keeps a winning
  /// position, if any.
  std::optional<NodeId> reply(const Position& pos, int remaining, int side, NodeId x) {
    const int other = 1 - side;
    const int l = side_[side].level[x];
    auto it = side_[other].by_level.find(l);
    if (it == side_[other].by_level.end()) return std::nullopt;
    for (NodeId y : it->second) {
      const PebblePair p = side == 0 ? PebblePair{x, y} : PebblePair{y, x};
      if (!consistent(pos, p)) continue;
      Position next = pos;
      next.push_back(p);
      if (duplicator_wins(next, remaining - 1)) return y;
    }
    return std::nullopt;
  }

  /// A spoiler pick from which no duplicator reply wins, if any.
  std::optional<std::pair<int, NodeId>> winning_pick(const Position& pos, int remaining) {
    if (remaining <= 0) return std::nullopt;
    for (int s = 0; s < 2; ++s)
      for (NodeId x = 0; x < side_of(cfg_, s).size(); ++x)
        if (spoiler_may_pick(pos, s, x) && !reply(pos, remaining, s, x)) return std::make_pair(s, x);
    return std::nullopt;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  struct SideInfo {
    std::vector<int> level;
    std::vector<NodeId> parent;
    std::vector<std::string> tag;
    std::map<int, std::vector<NodeId>> by_level;
  };

  static bool pebbled(const Position& pos, int side, NodeId x) {
    for (const auto& p : pos)
      if ((side == 0 ? p.first : p.second) == x) return true;
    return false;
  }

  // Repeating a pebbled node only burns a round, so it is never needed.
  bool spoiler_may_pick(const Position& pos, int side, NodeId x) const {
    if (pebbled(pos, side, x)) return false;
    if (!cfg_.prolonged) return true;
    const NodeId p = side_[side].parent[x];
    return p == kNoNode || pebbled(pos, side, p);
  }

  bool consistent(const Position& pos, const PebblePair& add) const {
    const auto& s0 = side_[0];
    const auto& s1 = side_[1];
    const auto [x, y] = add;
    if (s0.level[x] != s1.level[y] || s0.tag[x] != s1.tag[y]) return false;
    for (const auto& [u, w] : pos) {
      if ((u == x) != (w == y)) return false;
      if ((s0.parent[x] == u) != (s1.parent[y] == w)) return false;
      if ((s0.parent[u] == x) != (s1.parent[w] == y)) return false;
    }
    return true;
  }

  static std::string memo_key(Position pos, int remaining) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::string key;
    key.reserve(pos.size() * 4 + 1);
    key.push_back(static_cast<char>(remaining));
    for (const auto& [a, b] : pos) {
      key.push_back(static_cast<char>(a & 0xff));
      key.push_back(static_cast<char>((a >> 8) & 0xff));
      key.push_back(static_cast<char>(b & 0xff));
      key.push_back(static_cast<char>((b >> 8) & 0xff));
    }
    return key;
  }

  const GameConfig& cfg_;
  SolveLimits limits_;
  SideInfo side_[2];
  std::unordered_map<std::string, bool> memo_;
};

inline Player solve(const GameConfig& cfg, SolveLimits limits = {}) { return Solver(cfg, limits).winner(); }

// ---------------------------------------------------------------------------
// Color strategy

/// The ancestors of x in the h-view, root first, ending with x. A node
/// outside P_<=h has no view predecessor, so its chain is just [x].
inline std::vector<NodeId> prolong_and_lift(const LeveledForest& m, NodeId x, int h) {
  const HView v{m, h};
  std::vector<NodeId> chain{x};
  while (v.parent(chain.back()) != kNoNode) chain.push_back(v.parent(chain.back()));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

enum class StrategyRule { Repeat, Outside, Root, Successor };

inline const char* rule_name(StrategyRule r) {
  switch (r) {
    case StrategyRule::Repeat: return "repeat";
    case StrategyRule::Outside: return "outside";
    case StrategyRule::Root: return "root";
    case StrategyRule::Successor: return "successor";
  }
  return "?";
}

struct StrategyReply {
  std::optional<NodeId> node;
  StrategyRule rule = StrategyRule::Repeat;
  std::string failure;  // set when no eligible node exists

  bool ok() const { return node.has_value(); }
};

/// Duplicator strategy that keeps every pebbled pair color-preserving at
/// (k,h) with k = n(h+1). In the prolonged game it answers spoiler's picks
/// directly; in the ordinary n-round game it replays each pick as the
/// root-down chain of its view ancestors.
///
/// Preconditions, checked on construction:
///   - the initial pebbles (with constants, if enabled) are closed under
///     view predecessor, form a partial isomorphism and preserve colors;
///   - the censuses of view roots outside the pebbles agree, capped at k;
///   - for each pebbled pair, the colors of unpebbled view children agree
///     with multiplicities capped at k.
/// The last two refine "same number of roots with each color": pebbled
/// nodes are excluded from the counts, since they are not available as
/// fresh answers.
class ColorStrategy {
 public:
  ColorStrategy(const GameConfig& cfg, int n, int h) : cfg_(cfg), n_(n), h_(h), k_(n * (h + 1)) {
    if (n < 0) throw ContractError("color_strategy: n must be >= 0");
    if (cfg.h != h) throw ContractError("color_strategy: game is played on h = " + std::to_string(cfg.h));
    if (cfg.prolonged && cfg.rounds != k_)
      throw ContractError("color_strategy: prolonged game must last n(h+1) = " + std::to_string(k_) + " rounds");
    if (!cfg.prolonged && cfg.rounds > n)
      throw ContractError("color_strategy: ordinary game longer than n = " + std::to_string(n) + " rounds");
    for (int s = 0; s < 2; ++s) colors_[s] = coloring(HView{side_of(cfg, s), h}, std::max(k_, 1));
    const auto init = initial_position(cfg);
    if (init.mismatch) throw ContractError("color_strategy: " + *init.mismatch);
    initial_ = init.pairs;
    if (auto why = hypothesis_failure(); !why.empty()) throw ContractError("color_strategy: hypothesis violated: " + why);
  }

  int n() const { return n_; }
  int h() const { return h_; }
  int k() const { return k_; }
  const Position& initial() const { return initial_; }

  /// Prolonged-game answer to spoiler picking x on `side` in position pos.
  StrategyReply respond(const Position& pos, int side, NodeId x) const {
    const int other = 1 - side;
    const HView vs{side_of(cfg_, side), h_}, vo{side_of(cfg_, other), h_};
    if (auto partner = partner_of(pos, side, x)) return {partner, StrategyRule::Repeat, {}};
    const int l = vs.level(x);
    const Color& c = colors_[side][x];
    auto fresh = [&](NodeId y) { return !partner_of(pos, other, y) && colors_[other][y] == c; };
    if (l < 0) {
      for (NodeId y = 0; y < vo.base.size(); ++y)
        if (vo.level(y) < 0 && fresh(y)) return {y, StrategyRule::Outside, {}};
      return {std::nullopt, StrategyRule::Outside, "no unpebbled node outside P_<=h on side " + std::to_string(other)};
    }
    if (l == 0) {
      for (NodeId y = 0; y < vo.base.size(); ++y)
        if (vo.level(y) == 0 && fresh(y)) return {y, StrategyRule::Root, {}};
      return {std::nullopt, StrategyRule::Root, "no unpebbled root of color " + to_string(c) + " on side " + std::to_string(other)};
    }
    const NodeId x0 = vs.parent(x);
    const auto y0 = partner_of(pos, side, x0);
    if (!y0) return {std::nullopt, StrategyRule::Successor, "predecessor of node " + std::to_string(x) + " is not pebbled"};
    for (NodeId y : vo.children(*y0))
      if (fresh(y)) return {y, StrategyRule::Successor, {}};
    return {std::nullopt, StrategyRule::Successor,
            "no unpebbled successor of node " + std::to_string(*y0) + " with color " + to_string(c)};
  }

  /// Ordinary-game answer: replays the ancestor chain of x, extending the
  /// strategy's internal (prolonged) position as it goes.
  StrategyReply respond_lifted(Position& internal, int side, NodeId x) const {
    StrategyReply last;
    for (NodeId e : prolong_and_lift(side_of(cfg_, side), x, h_)) {
      last = respond(internal, side, e);
      if (!last.ok()) return last;
      if (last.rule != StrategyRule::Repeat)
        internal.push_back(side == 0 ? PebblePair{e, *last.node} : PebblePair{*last.node, e});
    }
    return last;
  }

 private:
  static std::optional<NodeId> partner_of(const Position& pos, int side, NodeId x) {
    for (const auto& p : pos) {
      if (side == 0 && p.first == x) return p.second;
      if (side == 1 && p.second == x) return p.first;
    }
    return std::nullopt;
  }

  Census free_children(int side, NodeId x, const std::set<NodeId>& pebbled) const {
    const HView v{side_of(cfg_, side), h_};
    Census out;
    for (NodeId c : v.children(x))
      if (!pebbled.count(c)) ++out[colors_[side][c]];
    for (auto& [col, cnt] : out) cnt = std::min(cnt, std::max(k_, 1));
    return out;
  }

  std::string hypothesis_failure() const {
    const HView v0{cfg_.m0, h_}, v1{cfg_.m1, h_};
    std::set<NodeId> p0, p1;
    for (const auto& [a, b] : initial_) {
      p0.insert(a);
      p1.insert(b);
    }
    for (const auto& [a, b] : initial_) {
      if (v0.parent(a) != kNoNode && !p0.count(v0.parent(a))) return "pebbles on side 0 not closed under predecessor";
      if (v1.parent(b) != kNoNode && !p1.count(v1.parent(b))) return "pebbles on side 1 not closed under predecessor";
      if (!(colors_[0][a] == colors_[1][b])) return "pebbled pair (" + std::to_string(a) + "," + std::to_string(b) + ") differs in color";
      if (v0.level(a) != v1.level(b)) return "pebbled pair differs in level";
      for (const auto& [c, d] : initial_) {
        if ((a == c) != (b == d)) return "pebbles do not respect equality";
        if ((v0.parent(c) == a) != (v1.parent(d) == b)) return "pebbles do not respect the predecessor relation";
      }
      if (free_children(0, a, p0) != free_children(1, b, p1))
        return "unpebbled successors of pair (" + std::to_string(a) + "," + std::to_string(b) + ") differ";
    }
    std::vector<NodeId> e0(p0.begin(), p0.end()), e1(p1.begin(), p1.end());
    const int cap = std::max(k_, 1);
    if (root_census(v0, cap, cap, e0) != root_census(v1, cap, cap, e1)) return "root censuses differ";
    return {};
  }

  GameConfig cfg_;
  int n_, h_, k_;
  std::vector<Color> colors_[2];
  Position initial_;
};

// ---------------------------------------------------------------------------
// Play harness

struct TraceRound {
  int round;
  Player mover;
  int side;
  NodeId node;
};

struct StrategyTrace {
  std::vector<TraceRound> rounds;
  bool duplicator_wins = false;
  std::string violation;  // violated atomic condition or strategy failure when spoiler wins
};

/// Spoiler's pick (side, node) given the visible position and rounds left.
using SpoilerPolicy = std::function<std::pair<int, NodeId>(const Position&, int)>;

inline bool spoiler_pick_legal(const GameConfig& cfg, const Position& pos, int side, NodeId x) {
  if (!cfg.prolonged) return true;
  const NodeId p = HView{side_of(cfg, side), cfg.h}.parent(x);
  if (p == kNoNode) return true;
  for (const auto& q : pos)
    if ((side == 0 ? q.first : q.second) == p || (side == 0 ? q.first : q.second) == x) return true;
  return false;
}

inline std::vector<std::pair<int, NodeId>> legal_spoiler_picks(const GameConfig& cfg, const Position& pos) {
  std::vector<std::pair<int, NodeId>> out;
  for (int s = 0; s < 2; ++s)
    for (NodeId x = 0; x < side_of(cfg, s).size(); ++x)
      if (spoiler_pick_legal(cfg, pos, s, x)) out.emplace_back(s, x);
  return out;
}

/// Uniformly random legal picks from a seeded generator.
inline SpoilerPolicy random_spoiler(const GameConfig& cfg, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [&cfg, rng](const Position& pos, int) {
    const auto picks = legal_spoiler_picks(cfg, pos);
    return picks[std::uniform_int_distribution<std::size_t>(0, picks.size() - 1)(*rng)];
  };
}

/// Plays a winning pick whenever the solver finds one, otherwise a random
/// legal pick.
inline SpoilerPolicy optimal_spoiler(const GameConfig& cfg, std::uint64_t seed, SolveLimits limits = {}) {
  auto solver = std::make_shared<Solver>(cfg, limits);
  auto fallback = random_spoiler(cfg, seed);
  return [solver, fallback](const Position& pos, int remaining) {
    if (auto pick = solver->winning_pick(pos, remaining)) return *pick;
    return fallback(pos, remaining);
  };
}

inline StrategyTrace play(const GameConfig& cfg, const ColorStrategy& strategy, const SpoilerPolicy& spoiler) {
  StrategyTrace trace;
  Position visible = strategy.initial();
  Position internal = visible;
  for (int r = 1; r <= cfg.rounds; ++r) {
    const auto [side, x] = spoiler(visible, cfg.rounds - r + 1);
    trace.rounds.push_back({r, Player::Spoiler, side, x});
    const StrategyReply rep = cfg.prolonged ? strategy.respond(internal, side, x) : strategy.respond_lifted(internal, side, x);
    if (!rep.ok()) {
      trace.violation = "strategy failure (" + std::string(rule_name(rep.rule)) + "): " + rep.failure;
      return trace;
    }
    trace.rounds.push_back({r, Player::Duplicator, 1 - side, *rep.node});
    const PebblePair p = side == 0 ? PebblePair{x, *rep.node} : PebblePair{*rep.node, x};
    visible.push_back(p);
    if (cfg.prolonged && rep.rule != StrategyRule::Repeat) internal.push_back(p);
  }
  if (auto v = find_violation(cfg, visible)) {
    trace.violation = *v;
  } else {
    trace.duplicator_wins = true;
  }
  return trace;
}

struct StrategyCheck {
  bool holds = true;
  std::size_t playouts = 0;
  std::optional<StrategyTrace> counterexample;
};

/// Plays the strategy against every spoiler pick sequence (repeats of
/// pebbled nodes are skipped: the strategy answers them with the old
/// partner, which changes nothing).
inline StrategyCheck check_strategy(const GameConfig& cfg, const ColorStrategy& strategy) {
  StrategyCheck out;
  std::set<std::string> seen;
  std::vector<TraceRound> path;

  auto key_of = [](Position a, Position b, int remaining) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::string k = std::to_string(remaining) + "|";
    for (const auto& [x, y] : a) k += std::to_string(x) + "," + std::to_string(y) + ";";
    k += "|";
    for (const auto& [x, y] : b) k += std::to_string(x) + "," + std::to_string(y) + ";";
    return k;
  };

  std::function<void(const Position&, const Position&, int)> dfs = [&](const Position& visible, const Position& internal,
                                                                       int remaining) {
    if (!out.holds) return;
    if (auto v = find_violation(cfg, visible)) {
      out.holds = false;
      out.counterexample = StrategyTrace{path, false, *v};
      return;
    }
    if (remaining == 0) {
      ++out.playouts;
      return;
    }
    if (!seen.insert(key_of(visible, internal, remaining)).second) return;
    const int r = cfg.rounds - remaining + 1;
    for (const auto& [side, x] : legal_spoiler_picks(cfg, visible)) {
      bool repeat = false;
      for (const auto& p : visible)
        if ((side == 0 ? p.first : p.second) == x) repeat = true;
      if (repeat) continue;
      Position next_internal = internal;
      const StrategyReply rep =
          cfg.prolonged ? strategy.respond(internal, side, x) : strategy.respond_lifted(next_internal, side, x);
      path.push_back({r, Player::Spoiler, side, x});
      if (!rep.ok()) {
        out.holds = false;
        out.counterexample = StrategyTrace{path, false, "strategy failure (" + std::string(rule_name(rep.rule)) + "): " + rep.failure};
        return;
      }
      path.push_back({r, Player::Duplicator, 1 - side, *rep.node});
      const PebblePair p = side == 0 ? PebblePair{x, *rep.node} : PebblePair{*rep.node, x};
      Position next_visible = visible;
      next_visible.push_back(p);
      if (cfg.prolonged) next_internal.push_back(p);
      dfs(next_visible, next_internal, remaining - 1);
      path.pop_back();
      path.pop_back();
      if (!out.holds) return;
    }
  };
  dfs(strategy.initial(), strategy.initial(), cfg.rounds);
  return out;
}

// ---------------------------------------------------------------------------

/// Rank-n L_h equivalence certified by colors: the view-root censuses at
/// k = n(h+1) agree, capped at k (or exactly, with exact = true). Tags are
/// ignored; the comparison is over the pure L_h vocabulary.
inline bool equiv_by_colors(const LeveledForest& m0, const LeveledForest& m1, int n, int h, bool exact = false) {
  if (n < 0 || h < 1) throw ContractError("equiv_by_colors: need n >= 0 and h >= 1");
  const int k = n * (h + 1);
  if (k == 0) return true;
  const std::optional<int> cap = exact ? std::nullopt : std::optional<int>(k);
  return root_census(HView{m0, h}, k, cap) == root_census(HView{m1, h}, k, cap);
}

}  // namespace lf
