#pragma once

// JSON recipes for forests:
//   {"op":"node"}                          one root
//   {"op":"chain","length":n}              a path of n nodes
//   {"op":"union","parts":[spec, ...]}
//   {"op":"copies","of":spec,"m":m}
//   {"op":"ea","kind":"E","k":k,"B":b}
//   {"op":"gadget","d":d,"B":b}            optional "payloads":[spec, ...]
//   {"op":"prime","s":s,"j":j}
//   {"nodes":[...]}                        a literal structure

#include <string>

#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/hardness.hpp"
#include "lf/json_io.hpp"

namespace lf {

inline LeveledForest expand_spec(const json& spec) {
  if (!spec.is_object()) throw ParseError("generator: spec must be an object");
  if (spec.contains("nodes")) return forest_from_json(spec);
  auto int_field = [&](const char* key) {
    if (!spec.contains(key) || !spec[key].is_number_integer()) throw ParseError(std::string("generator: missing integer field ") + key);
    return spec[key].get<int>();
  };
  if (!spec.contains("op") || !spec["op"].is_string()) throw ParseError("generator: missing op");
  const std::string op = spec["op"].get<std::string>();
  if (op == "node") {
    LeveledForest f;
    f.add_root();
    return f;
  }
  if (op == "chain") {
    const int n = int_field("length");
    if (n < 1) throw ContractError("generator: chain length must be positive");
    LeveledForest f;
    NodeId x = f.add_root();
    for (int i = 1; i < n; ++i) x = f.add_child(x);
    return f;
  }
  if (op == "union") {
    if (!spec.contains("parts") || !spec["parts"].is_array()) throw ParseError("generator: union needs parts");
    LeveledForest f;
    for (const auto& part : spec["parts"]) f = disjoint_union(f, expand_spec(part));
    return f;
  }
  if (op == "copies") {
    if (!spec.contains("of")) throw ParseError("generator: copies needs of");
    return copies(expand_spec(spec["of"]), int_field("m"));
  }
  if (op == "ea") return build_EA(ea_spec_from_json(spec));
  if (op == "gadget") {
    const int d = int_field("d");
    GadgetSpec g = default_gadget_spec(d, spec.contains("B") ? int_field("B") : 2);
    if (spec.contains("payloads")) {
      if (!spec["payloads"].is_array() || static_cast<int>(spec["payloads"].size()) != d)
        throw ParseError("generator: gadget needs d payloads");
      for (int i = 0; i < d; ++i) g.payloads[i] = expand_spec(spec["payloads"][i]);
    }
    return build_gadget(g).forest;
  }
  if (op == "prime") return build_prime(int_field("s"), int_field("j"));
  throw ParseError("generator: unknown op " + op);
}

}  // namespace lf
