#pragma once

// Finite leveled forests: the structures every other module works on.
//
// A node is either leveled (level >= 0) or unleveled. A leveled node at level
// l >= 1 hangs off exactly one parent at level l - 1; level-0 nodes and
// unleveled nodes have no parent. Nodes may carry a constant tag of the form
// "c_<model>_<copy>_<element>".

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lf/errors.hpp"

namespace lf {

using NodeId = int;

inline constexpr int kUnleveled = -1;
inline constexpr NodeId kNoNode = -1;

struct NodeRecord {
  int level = kUnleveled;
  NodeId parent = kNoNode;
  std::string tag;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

class LeveledForest {
 public:
  LeveledForest() = default;

  /// Builds a forest from raw records; parent ids may point forward. The
  /// result need not satisfy the forest axioms (see validate()), but every
  /// parent id must name an existing node.
  explicit LeveledForest(std::vector<NodeRecord> records) : nodes_(std::move(records)) {
    children_.resize(nodes_.size());
    for (NodeId x = 0; x < size(); ++x) {
      const NodeId p = nodes_[x].parent;
      if (p == kNoNode) continue;
      if (p < 0 || p >= size()) {
        throw ContractError("node " + std::to_string(x) + " has out-of-range parent " + std::to_string(p));
      }
      children_[p].push_back(x);
    }
  }

  NodeId add_root(std::string tag = {}) { return push({0, kNoNode, std::move(tag)}); }

  NodeId add_unleveled(std::string tag = {}) { return push({kUnleveled, kNoNode, std::move(tag)}); }

  NodeId add_child(NodeId parent, std::string tag = {}) {
    check_id(parent);
    if (nodes_[parent].level == kUnleveled) throw DomainError("cannot attach a child to an unleveled node");
    return push({nodes_[parent].level + 1, parent, std::move(tag)});
  }

  /// Unchecked insertion; used to build deliberately broken inputs.
  NodeId add_raw(NodeRecord r) {
    if (r.parent != kNoNode) check_id(r.parent);
    return push(std::move(r));
  }

  void set_tag(NodeId x, std::string tag) {
    check_id(x);
    nodes_[x].tag = std::move(tag);
  }

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  bool empty() const noexcept { return nodes_.empty(); }

  const NodeRecord& node(NodeId x) const { return nodes_.at(x); }
  int level(NodeId x) const { return nodes_.at(x).level; }
  bool is_leveled(NodeId x) const { return nodes_.at(x).level != kUnleveled; }
  NodeId parent(NodeId x) const { return nodes_.at(x).parent; }
  const std::string& tag(NodeId x) const { return nodes_.at(x).tag; }
  bool has_tag(NodeId x) const { return !nodes_.at(x).tag.empty(); }
  const std::vector<NodeId>& children(NodeId x) const { return children_.at(x); }
  const std::vector<NodeRecord>& records() const noexcept { return nodes_; }

  /// Level-0 nodes in id order.
  std::vector<NodeId> roots() const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < size(); ++x)
      if (nodes_[x].level == 0) out.push_back(x);
    return out;
  }

  /// Largest level of any node, or -1 if no node is leveled.
  int height() const {
    int h = -1;
    for (const auto& n : nodes_) h = std::max(h, n.level);
    return h;
  }

  std::optional<NodeId> find_tag(const std::string& name) const {
    for (NodeId x = 0; x < size(); ++x)
      if (nodes_[x].tag == name) return x;
    return std::nullopt;
  }

  friend bool operator==(const LeveledForest& a, const LeveledForest& b) { return a.nodes_ == b.nodes_; }

 private:
  NodeId push(NodeRecord r) {
    const NodeId id = size();
    const NodeId p = r.parent;
    nodes_.push_back(std::move(r));
    children_.emplace_back();
    if (p != kNoNode) children_[p].push_back(id);
    return id;
  }

  void check_id(NodeId x) const {
    if (x < 0 || x >= size()) throw ContractError("node id " + std::to_string(x) + " out of range");
  }

  std::vector<NodeRecord> nodes_;
  std::vector<std::vector<NodeId>> children_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string axiom;
  std::vector<NodeId> nodes;

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline bool is_const_tag(const std::string& tag) {
  static const std::regex shape("c_[0-9]+_[0-9]+_[0-9]+");
  return std::regex_match(tag, shape);
}

/// One record per broken axiom instance; an empty result means F is a model of
/// the base theory.
inline std::vector<Violation> validate(const LeveledForest& f) {
  std::vector<Violation> out;
  std::map<std::string, std::vector<NodeId>> tags;
  for (NodeId x = 0; x < f.size(); ++x) {
    const auto& n = f.node(x);
    if (n.parent == kNoNode) {
      if (n.level >= 1) out.push_back({"missing-predecessor", {x}});
    } else if (n.level == kUnleveled || f.level(n.parent) == kUnleveled) {
      out.push_back({"unleveled-edge", {n.parent, x}});
    } else if (n.level != f.level(n.parent) + 1) {
      out.push_back({"level-skip", {n.parent, x}});
    }
    if (!n.tag.empty()) {
      tags[n.tag].push_back(x);
      if (!is_const_tag(n.tag)) out.push_back({"malformed-tag", {x}});
    }
  }
  for (auto& [tag, ids] : tags)
    if (ids.size() > 1) out.push_back({"duplicate-tag", ids});
  return out;
}

inline bool is_valid(const LeveledForest& f) { return validate(f).empty(); }

// ---------------------------------------------------------------------------
// Structural operations

/// Copies the subtree of `src` rooted at `root` into `dst` below `parent`
/// (or as a new level-0 root when parent is kNoNode), re-basing levels.
/// Returns the id of the copied root.
inline NodeId graft(LeveledForest& dst, NodeId parent, const LeveledForest& src, NodeId root, bool keep_tags = true) {
  const NodeId top = parent == kNoNode ? dst.add_root(keep_tags ? src.tag(root) : std::string{})
                                       : dst.add_child(parent, keep_tags ? src.tag(root) : std::string{});
  std::vector<std::pair<NodeId, NodeId>> stack{{root, top}};
  while (!stack.empty()) {
    auto [from, to] = stack.back();
    stack.pop_back();
    const auto& kids = src.children(from);
    // Reverse push keeps preorder ids in source child order.
    std::vector<std::pair<NodeId, NodeId>> batch;
    for (NodeId c : kids) batch.emplace_back(c, dst.add_child(to, keep_tags ? src.tag(c) : std::string{}));
    for (auto it = batch.rbegin(); it != batch.rend(); ++it) stack.push_back(*it);
  }
  return top;
}

inline LeveledForest strip_tags(const LeveledForest& f) {
  auto records = f.records();
  for (auto& r : records) r.tag.clear();
  return LeveledForest(std::move(records));
}

/// Nodes of `b` are renamed to follow those of `a`.
inline LeveledForest disjoint_union(const LeveledForest& a, const LeveledForest& b) {
  std::set<std::string> seen;
  for (const auto& r : a.records())
    if (!r.tag.empty()) seen.insert(r.tag);
  for (const auto& r : b.records())
    if (!r.tag.empty() && seen.count(r.tag)) throw TagCollisionError("constant tag " + r.tag + " occurs in both inputs");
  auto records = a.records();
  const int offset = a.size();
  for (auto r : b.records()) {
    if (r.parent != kNoNode) r.parent += offset;
    records.push_back(std::move(r));
  }
  return LeveledForest(std::move(records));
}

/// m renamed-apart copies of f. Tags survive on the first copy only. m = 0
/// yields the empty forest.
inline LeveledForest copies(const LeveledForest& f, int m) {
  if (m < 0) throw ContractError("copies: negative multiplicity");
  LeveledForest out;
  if (m == 0) return out;
  out = f;
  const LeveledForest untagged = strip_tags(f);
  for (int i = 1; i < m; ++i) out = disjoint_union(out, untagged);
  return out;
}

/// The tree above m: m becomes the only root, levels shift down by level(m).
/// Node m gets id 0; the rest follow in preorder.
inline LeveledForest tree_above(const LeveledForest& f, NodeId m) {
  if (m < 0 || m >= f.size()) throw DomainError("tree_above: no such node");
  if (!f.is_leveled(m)) throw DomainError("tree_above: node " + std::to_string(m) + " is unleveled");
  LeveledForest out;
  graft(out, kNoNode, f, m);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms and isomorphism

namespace detail {

inline std::string encode_node(const LeveledForest& f, NodeId x, std::vector<std::string>& memo) {
  if (!memo[x].empty()) return memo[x];
  std::vector<std::string> parts;
  parts.reserve(f.children(x).size());
  for (NodeId c : f.children(x)) parts.push_back(encode_node(f, c, memo));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  if (f.has_tag(x)) s += "#" + f.tag(x) + ";";
  for (const auto& p : parts) s += p;
  s += ")";
  return memo[x] = s;
}

inline std::string top_key(const LeveledForest& f, NodeId x, std::vector<std::string>& memo) {
  const std::string prefix = f.is_leveled(x) ? "L" + std::to_string(f.level(x)) : std::string("U");
  return prefix + encode_node(f, x, memo);
}

}  // namespace detail

/// Canonical certificate of a valid forest: two forests are isomorphic (as
/// leveled, tagged forests) iff their certificates are equal.
inline std::string canonical_encoding(const LeveledForest& f) {
  std::vector<std::string> memo(f.size());
  std::vector<std::string> tops;
  for (NodeId x = 0; x < f.size(); ++x)
    if (f.parent(x) == kNoNode) tops.push_back(detail::top_key(f, x, memo));
  std::sort(tops.begin(), tops.end());
  std::string out;
  for (const auto& t : tops) out += t;
  return out;
}

/// Canonical encoding of every node's subtree.
inline std::vector<std::string> subtree_encodings(const LeveledForest& f) {
  std::vector<std::string> memo(f.size());
  for (NodeId x = 0; x < f.size(); ++x) detail::encode_node(f, x, memo);
  return memo;
}

/// Re-indexes f canonically: top-level nodes ordered by canonical key, each
/// tree laid out in preorder with children ordered by encoding. Isomorphic
/// inputs produce identical outputs.
inline LeveledForest canonicalize(const LeveledForest& f) {
  std::vector<std::string> memo(f.size());
  std::vector<std::pair<std::string, NodeId>> tops;
  for (NodeId x = 0; x < f.size(); ++x)
    if (f.parent(x) == kNoNode) tops.emplace_back(detail::top_key(f, x, memo), x);
  std::stable_sort(tops.begin(), tops.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<NodeRecord> out;
  std::vector<NodeId> new_id(f.size(), kNoNode);
  for (const auto& [key, top] : tops) {
    std::vector<NodeId> stack{top};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      new_id[x] = static_cast<NodeId>(out.size());
      const NodeId p = f.parent(x);
      out.push_back({f.level(x), p == kNoNode ? kNoNode : new_id[p], f.tag(x)});
      std::vector<NodeId> kids = f.children(x);
      std::stable_sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) { return memo[a] < memo[b]; });
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
  }
  return LeveledForest(std::move(out));
}

struct IsoResult {
  bool isomorphic = false;
  std::string certificate_a;
  std::string certificate_b;
};

inline IsoResult iso_check(const LeveledForest& a, const LeveledForest& b) {
  IsoResult r;
  r.certificate_a = canonical_encoding(a);
  r.certificate_b = canonical_encoding(b);
  r.isomorphic = r.certificate_a == r.certificate_b;
  return r;
}

inline bool isomorphic(const LeveledForest& a, const LeveledForest& b) { return iso_check(a, b).isomorphic; }

// ---------------------------------------------------------------------------
// Enumeration of finite models

struct EnumerationOptions {
  int limit = 8;
  /// Maximum number of unleveled points per model (0 = P-covered models only).
  int allow_unleveled = 0;
};

namespace detail {

struct ShapeRef {
  int size;
  int index;
  friend auto operator<=>(const ShapeRef&, const ShapeRef&) = default;
};

/// Rooted unlabeled trees by size; a tree is the nonincreasing list of its
/// child subtrees.
class ShapeTable {
 public:
  explicit ShapeTable(int max_size) : trees_(max_size + 1) {
    for (int s = 1; s <= max_size; ++s)
      for (auto& kids : forests(s - 1)) trees_[s].push_back(std::move(kids));
  }

  std::vector<std::vector<ShapeRef>> forests(int n) const {
    std::vector<std::vector<ShapeRef>> out;
    std::vector<ShapeRef> current;
    extend(n, ShapeRef{n, 1 << 30}, current, out);
    return out;
  }

  void materialize(LeveledForest& f, NodeId parent, ShapeRef t) const {
    const NodeId x = parent == kNoNode ? f.add_root() : f.add_child(parent);
    for (const auto& c : trees_[t.size][t.index]) materialize(f, x, c);
  }

 private:
  void extend(int remaining, ShapeRef bound, std::vector<ShapeRef>& cur, std::vector<std::vector<ShapeRef>>& out) const {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int s = std::min(remaining, bound.size); s >= 1; --s) {
      const int count = static_cast<int>(trees_[s].size());
      const int top = s == bound.size ? std::min(count - 1, bound.index) : count - 1;
      for (int i = top; i >= 0; --i) {
        cur.push_back({s, i});
        extend(remaining - s, {s, i}, cur, out);
        cur.pop_back();
      }
    }
  }

  std::vector<std::vector<std::vector<ShapeRef>>> trees_;
};

}  // namespace detail

/// All models of size n up to isomorphism, canonicalized and sorted by
/// canonical encoding.
inline std::vector<LeveledForest> enumerate_models(int n, const EnumerationOptions& opt = {}) {
  if (n < 1) throw ContractError("enumerate_models: n must be positive");
  if (n > opt.limit) throw ResourceError("enumerate_models: n = " + std::to_string(n) + " exceeds limit " + std::to_string(opt.limit));
  const detail::ShapeTable table(n);
  std::vector<std::pair<std::string, LeveledForest>> found;
  for (int u = 0; u <= std::min(opt.allow_unleveled, n); ++u) {
    for (const auto& shape : table.forests(n - u)) {
      LeveledForest f;
      for (const auto& t : shape) table.materialize(f, kNoNode, t);
      for (int i = 0; i < u; ++i) f.add_unleveled();
      f = canonicalize(f);
      found.emplace_back(canonical_encoding(f), std::move(f));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LeveledForest> out;
  out.reserve(found.size());
  for (auto& [key, f] : found) out.push_back(std::move(f));
  return out;
}

/// Every model of size <= s, in enumeration order (size first).
inline std::vector<LeveledForest> models_up_to(int s, const EnumerationOptions& opt = {}) {
  std::vector<LeveledForest> out;
  for (int n = 1; n <= s; ++n)
    for (auto& m : enumerate_models(n, opt)) out.push_back(std::move(m));
  return out;
}

inline std::string const_name(int model, int copy, int element) {
  return "c_" + std::to_string(model) + "_" + std::to_string(copy) + "_" + std::to_string(element);
}

/// The truncated prime model: j tagged copies of every model of size <= s.
/// Element m of copy c of the i-th model (1-based i, c) carries c_i_c_m,
/// elements taken in canonical order.
inline LeveledForest build_prime(int s, int j, const EnumerationOptions& opt = {}) {
  if (s < 1 || j < 1) throw ContractError("build_prime: s and j must be positive");
  const auto models = models_up_to(s, opt);
  std::vector<NodeRecord> out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const LeveledForest& m = models[i];
    for (int c = 1; c <= j; ++c) {
      const int offset = static_cast<int>(out.size());
      for (NodeId x = 0; x < m.size(); ++x) {
        const NodeId p = m.parent(x);
        out.push_back({m.level(x), p == kNoNode ? kNoNode : p + offset, const_name(static_cast<int>(i) + 1, c, x)});
      }
    }
  }
  return LeveledForest(std::move(out));
}

/// Nodes whose tag starts with the given prefix, as an induced substructure
/// (parents outside the selection are dropped).
inline LeveledForest tagged_component(const LeveledForest& f, const std::string& prefix) {
  std::vector<NodeId> pick;
  std::vector<NodeId> new_id(f.size(), kNoNode);
  for (NodeId x = 0; x < f.size(); ++x)
    if (f.tag(x).rfind(prefix, 0) == 0) {
      new_id[x] = static_cast<NodeId>(pick.size());
      pick.push_back(x);
    }
  std::vector<NodeRecord> out;
  for (NodeId x : pick) {
    const NodeId p = f.parent(x);
    out.push_back({f.level(x), p == kNoNode ? kNoNode : new_id[p], f.tag(x)});
  }
  return LeveledForest(std::move(out));
}

}  // namespace lf
