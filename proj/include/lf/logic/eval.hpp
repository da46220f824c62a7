#pragma once

// Tarskian model checking over a leveled forest. Unbounded quantifiers range
// over every node, unleveled ones included; level atoms are false on
// unleveled nodes.

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/logic/formula.hpp"

namespace lf::logic {

using Assignment = std::map<std::string, NodeId>;

class Evaluator {
 public:
  explicit Evaluator(const LeveledForest& f) : f_(f) {
    for (NodeId x = 0; x < f.size(); ++x)
      if (f.has_tag(x)) consts_.emplace(f.tag(x), x);
  }

  bool operator()(const Formula& phi, const Assignment& asg = {}) {
    env_.assign(asg.begin(), asg.end());
    return eval(phi);
  }

 private:
  NodeId resolve(const Term& t) const {
    if (t.kind == Term::Kind::Const) {
      auto it = consts_.find(t.name);
      if (it == consts_.end()) throw EvalError("constant #" + t.name + " is not interpreted in the structure");
      return it->second;
    }
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == t.name) return it->second;
    throw EvalError("variable " + t.name + " is unbound");
  }

  bool edge(int i, NodeId t, NodeId u) const {
    return f_.parent(u) == t && f_.level(t) == i && f_.level(u) == i + 1;
  }

  bool eval(const Formula& phi) {
    switch (phi.op) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::P: return f_.level(resolve(phi.terms[0])) == phi.index;
      case Op::Lt: return edge(phi.index, resolve(phi.terms[0]), resolve(phi.terms[1]));
      case Op::Eq: return resolve(phi.terms[0]) == resolve(phi.terms[1]);
      case Op::Pred: {
        const NodeId t = resolve(phi.terms[0]);
        return f_.parent(resolve(phi.terms[1])) == t;
      }
      case Op::Not: return !eval(phi.args[0]);
      case Op::And: return eval(phi.args[0]) && eval(phi.args[1]);
      case Op::Or: return eval(phi.args[0]) || eval(phi.args[1]);
      case Op::Implies: return !eval(phi.args[0]) || eval(phi.args[1]);
      case Op::Forall:
      case Op::Exists: {
        const bool want = phi.op == Op::Exists;
        env_.emplace_back(phi.var, 0);
        bool result = !want;
        for (NodeId x = 0; x < f_.size(); ++x) {
          env_.back().second = x;
          if (eval(phi.args[0]) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
      case Op::LocalForall:
      case Op::LocalExists: {
        const bool want = phi.op == Op::LocalExists;
        const NodeId anchor = resolve(phi.terms[0]);
        bool result = !want;
        if (f_.level(anchor) != phi.index) return result;
        env_.emplace_back(phi.var, 0);
        for (NodeId c : f_.children(anchor)) {
          if (!edge(phi.index, anchor, c)) continue;
          env_.back().second = c;
          if (eval(phi.args[0]) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

  const LeveledForest& f_;
  std::unordered_map<std::string, NodeId> consts_;
  std::vector<std::pair<std::string, NodeId>> env_;
};

/// Truth of phi in f under asg. Throws EvalError on unbound variables or
/// uninterpreted constants.
inline bool eval(const LeveledForest& f, const Formula& phi, const Assignment& asg = {}) {
  return Evaluator(f)(phi, asg);
}

}  // namespace lf::logic
