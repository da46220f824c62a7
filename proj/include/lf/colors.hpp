#pragma once

// (k,h)-bounded colorings of h-views of leveled forests.
//
// The color of a node x in the h-view is <level, {(color of child, count)}>,
// with counts capped at k. Nodes outside P_<=h (level > h or unleveled) get
// <-1, []>. In the h-view such nodes have no predecessor, so they are roots
// of the view and show up in root censuses.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lf/errors.hpp"
#include "lf/forest.hpp"

namespace lf {

struct ColorCount;

struct Color {
  int level = 0;  // -1: outside P_<=h
  std::vector<ColorCount> children;
};

struct ColorCount {
  Color color;
  int count = 0;
};

// Structural order: level first, then the child list lexicographically.
inline std::strong_ordering operator<=>(const Color& a, const Color& b);

inline std::strong_ordering operator<=>(const ColorCount& a, const ColorCount& b) {
  if (auto c = a.color <=> b.color; c != 0) return c;
  return a.count <=> b.count;
}

inline std::strong_ordering operator<=>(const Color& a, const Color& b) {
  if (auto c = a.level <=> b.level; c != 0) return c;
  const std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
  return a.children.size() <=> b.children.size();
}

inline bool operator==(const Color& a, const Color& b) { return (a <=> b) == 0; }
inline bool operator==(const ColorCount& a, const ColorCount& b) { return (a <=> b) == 0; }

inline Color outside_color() { return Color{-1, {}}; }

// ---------------------------------------------------------------------------
// Text form: (<level> [<color>*<count>, ...])

inline std::string to_string(const Color& c) {
  std::string s = "(" + std::to_string(c.level) + " [";
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    if (i) s += ", ";
    s += to_string(c.children[i].color) + "*" + std::to_string(c.children[i].count);
  }
  return s + "])";
}

namespace detail {

class ColorReader {
 public:
  explicit ColorReader(std::string_view s) : s_(s) {}

  Color read_all() {
    Color c = read();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("color: " + msg, 1, static_cast<int>(i_) + 1);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  int read_int() {
    skip();
    std::size_t j = i_;
    if (j < s_.size() && s_[j] == '-') ++j;
    const std::size_t digits = j;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == digits) fail("expected an integer");
    const int v = std::stoi(std::string(s_.substr(i_, j - i_)));
    i_ = j;
    return v;
  }
  Color read() {
    expect('(');
    Color c;
    c.level = read_int();
    expect('[');
    if (!peek(']')) {
      for (;;) {
        Color child = read();
        expect('*');
        c.children.push_back({std::move(child), read_int()});
        if (peek(',')) {
          ++i_;
          continue;
        }
        break;
      }
    }
    expect(']');
    expect(')');
    return c;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Color parse_color(std::string_view text) { return detail::ColorReader(text).read_all(); }

// ---------------------------------------------------------------------------
// h-views

/// The L_h-reduct of a forest. Nodes above level h are treated as unleveled.
struct HView {
  const LeveledForest& base;
  int h;

  /// Level in the view, or -1 outside P_<=h.
  int level(NodeId x) const {
    const int l = base.level(x);
    return l >= 0 && l <= h ? l : -1;
  }
  bool in_view(NodeId x) const { return level(x) >= 0; }
  /// No predecessor in the view: level-0 nodes and everything outside P_<=h.
  bool is_root(NodeId x) const { return level(x) <= 0; }

  NodeId parent(NodeId x) const { return level(x) >= 1 ? base.parent(x) : kNoNode; }

  std::vector<NodeId> children(NodeId x) const {
    const int l = level(x);
    if (l < 0 || l >= h) return {};
    return base.children(x);
  }

  std::vector<NodeId> roots() const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < base.size(); ++x)
      if (is_root(x)) out.push_back(x);
    return out;
  }
};

namespace detail {

inline std::vector<ColorCount> tally(std::vector<Color> colors, int k) {
  std::sort(colors.begin(), colors.end());
  std::vector<ColorCount> out;
  for (std::size_t i = 0; i < colors.size();) {
    std::size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    const int n = std::min(k, static_cast<int>(j - i));
    if (n > 0) out.push_back({colors[i], n});
    i = j;
  }
  return out;
}

}  // namespace detail

/// The k-bounded coloring of the view, indexed by node id. With k = 0 every
/// color reduces to its level.
inline std::vector<Color> coloring(const HView& v, int k) {
  if (k < 0) throw ContractError("coloring: k must be >= 0");
  if (v.h < 1) throw ContractError("coloring: h must be >= 1");
  const int n = v.base.size();
  std::vector<Color> out(n, outside_color());
  std::vector<std::vector<NodeId>> by_level(v.h + 1);
  for (NodeId x = 0; x < n; ++x)
    if (v.in_view(x)) by_level[v.level(x)].push_back(x);
  for (int l = v.h; l >= 0; --l) {
    for (NodeId x : by_level[l]) {
      std::vector<Color> kids;
      for (NodeId c : v.children(x)) kids.push_back(out[c]);
      out[x] = Color{l, detail::tally(std::move(kids), k)};
    }
  }
  return out;
}

/// Adds delta to every level inside c (re-bases a color to another level).
inline Color shift_color(const Color& c, int delta) {
  Color out{c.level < 0 ? c.level : c.level + delta, {}};
  for (const auto& cc : c.children) out.children.push_back({shift_color(cc.color, delta), cc.count});
  return out;
}

/// Depth of the deepest level mentioned in c.
inline int color_top_level(const Color& c) {
  int top = c.level;
  for (const auto& cc : c.children) top = std::max(top, color_top_level(cc.color));
  return top;
}

/// Empty string when c could be the color of a node in some h-forest at
/// bound k; otherwise a description of the first defect.
inline std::string color_defect(const Color& c, int k, int h) {
  if (c.level < -1 || c.level > h) return "level " + std::to_string(c.level) + " outside -1.." + std::to_string(h);
  if (c.level == -1 || c.level == h) {
    if (!c.children.empty()) return "a node at level " + std::to_string(c.level) + " has no successors in the view";
    return {};
  }
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    const auto& cc = c.children[i];
    if (cc.count < 1 || cc.count > k) return "count " + std::to_string(cc.count) + " outside 1.." + std::to_string(k);
    if (cc.color.level != c.level + 1) return "child color on level " + std::to_string(cc.color.level) + " under level " + std::to_string(c.level);
    if (i > 0 && !(c.children[i - 1].color < cc.color)) return "child colors not in strictly increasing canonical order";
    if (auto d = color_defect(cc.color, k, h); !d.empty()) return d;
  }
  return {};
}

namespace detail {

inline void build_y_below(LeveledForest& f, NodeId at, const Color& c) {
  for (const auto& cc : c.children)
    for (int i = 0; i < cc.count; ++i) build_y_below(f, f.add_child(at), cc.color);
}

}  // namespace detail

/// The finite tree Y whose root has color lambda: every child entry
/// (lambda_i, n_i) contributes exactly n_i recursively built subtrees.
inline LeveledForest build_Y(const Color& lambda, int k, int h) {
  if (lambda.level != 0) throw ContractError("build_Y: color must sit on level 0, got " + to_string(lambda));
  if (auto d = color_defect(lambda, k, h); !d.empty()) throw ContractError("build_Y: malformed color: " + d);
  LeveledForest f;
  detail::build_y_below(f, f.add_root(), lambda);
  const auto check = coloring(HView{f, h}, k);
  if (!(check[0] == lambda)) throw std::logic_error("build_Y: root color mismatch for " + to_string(lambda));
  return f;
}

// ---------------------------------------------------------------------------
// Root censuses

using Census = std::map<Color, int>;

/// Multiset of colors of the view's roots (level-0 nodes and nodes outside
/// P_<=h), each count capped at cap (nullopt: exact counts). Nodes listed in
/// `exclude` are skipped, which gives the census of roots not pinned by an
/// initial tuple.
inline Census root_census(const HView& v, int k, std::optional<int> cap, const std::vector<NodeId>& exclude = {}) {
  if (cap && *cap < 1) throw ContractError("root_census: cap must be >= 1");
  const auto colors = coloring(v, k);
  const std::set<NodeId> skip(exclude.begin(), exclude.end());
  Census out;
  for (NodeId x : v.roots())
    if (!skip.count(x)) ++out[colors[x]];
  if (cap)
    for (auto& [c, n] : out) n = std::min(n, *cap);
  return out;
}

// ---------------------------------------------------------------------------
// Type fingerprints

struct Resolution {
  int k;
  int h;
  friend auto operator<=>(const Resolution&, const Resolution&) = default;
};

struct ElementFingerprint {
  bool is_constant = false;
  std::optional<int> level;
  /// Per grid entry: colors of the element's ancestors, root first, ending
  /// with the element itself.
  std::vector<std::vector<Color>> ancestor_colors;

  friend bool operator==(const ElementFingerprint&, const ElementFingerprint&) = default;
};

using MeetPoint = std::optional<std::pair<int, int>>;

struct TypeFingerprint {
  std::vector<Resolution> grid;
  std::vector<ElementFingerprint> elements;
  /// meet[i][j]: least (u,v) with pred^u(x_i) = pred^v(x_j); nullopt when the
  /// elements sit in different trees.
  std::vector<std::vector<MeetPoint>> meet;

  friend bool operator==(const TypeFingerprint&, const TypeFingerprint&) = default;
};

/// Ancestors of x (root first), ending with x.
inline std::vector<NodeId> ancestor_chain(const LeveledForest& f, NodeId x) {
  std::vector<NodeId> chain{x};
  while (f.parent(chain.back()) != kNoNode) chain.push_back(f.parent(chain.back()));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

inline MeetPoint meet_point(const LeveledForest& f, NodeId a, NodeId b) {
  const auto ca = ancestor_chain(f, a);
  const auto cb = ancestor_chain(f, b);
  if (ca.front() != cb.front()) return std::nullopt;
  std::size_t common = 0;
  while (common < ca.size() && common < cb.size() && ca[common] == cb[common]) ++common;
  return std::make_pair(static_cast<int>(ca.size() - common), static_cast<int>(cb.size() - common));
}

inline TypeFingerprint fingerprint(const LeveledForest& f, const std::vector<NodeId>& tuple,
                                   const std::vector<Resolution>& grid) {
  for (NodeId x : tuple)
    if (x < 0 || x >= f.size()) throw ContractError("fingerprint: node " + std::to_string(x) + " not in structure");
  TypeFingerprint out;
  out.grid = grid;
  std::vector<std::vector<Color>> colorings;
  for (const auto& r : grid) colorings.push_back(coloring(HView{f, r.h}, r.k));
  for (NodeId x : tuple) {
    ElementFingerprint e;
    e.is_constant = f.has_tag(x);
    if (f.is_leveled(x)) e.level = f.level(x);
    const auto chain = ancestor_chain(f, x);
    for (const auto& cols : colorings) {
      std::vector<Color> list;
      for (NodeId a : chain) list.push_back(cols[a]);
      e.ancestor_colors.push_back(std::move(list));
    }
    out.elements.push_back(std::move(e));
  }
  const std::size_t n = tuple.size();
  out.meet.assign(n, std::vector<MeetPoint>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.meet[i][j] = meet_point(f, tuple[i], tuple[j]);
  return out;
}

/// Sufficient condition for (F0,a) and (F1,b) to agree on rank-n L_h formulas
/// when k = n(h+1): equal fingerprints at (k,h), and equal censuses of the
/// roots outside the tuples, capped at k.
inline bool types_agree(const LeveledForest& f0, const std::vector<NodeId>& a, const LeveledForest& f1,
                        const std::vector<NodeId>& b, int k, int h) {
  if (a.size() != b.size()) return false;
  if (!(fingerprint(f0, a, {{k, h}}) == fingerprint(f1, b, {{k, h}}))) return false;
  const int cap = std::max(k, 1);
  return root_census(HView{f0, h}, k, cap, a) == root_census(HView{f1, h}, k, cap, b);
}

}  // namespace lf
