#pragma once

// Canonical JSON for structures:
//   {"nodes":[{"id":0,"level":0,"parent":null,"const":"c_1_1_0"}, ...]}
// level is an integer or null (unleveled); const is omitted when absent.

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"

namespace lf {

using json = nlohmann::ordered_json;

inline json to_json(const LeveledForest& f) {
  json nodes = json::array();
  for (NodeId x = 0; x < f.size(); ++x) {
    json n;
    n["id"] = x;
    n["level"] = f.is_leveled(x) ? json(f.level(x)) : json(nullptr);
    n["parent"] = f.parent(x) == kNoNode ? json(nullptr) : json(f.parent(x));
    if (f.has_tag(x)) n["const"] = f.tag(x);
    nodes.push_back(std::move(n));
  }
  json out;
  out["nodes"] = std::move(nodes);
  return out;
}

/// Rejects documents whose ids are not exactly 0..n-1.
inline LeveledForest forest_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw ParseError("structure: expected an object with a \"nodes\" array");
  const auto& nodes = j["nodes"];
  const int n = static_cast<int>(nodes.size());
  std::vector<NodeRecord> records(n);
  std::vector<bool> seen(n, false);
  for (const auto& node : nodes) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_number_integer())
      throw ParseError("structure: every node needs an integer id");
    const int id = node["id"].get<int>();
    if (id < 0 || id >= n || seen[id]) throw ParseError("structure: ids must be exactly 0.." + std::to_string(n - 1));
    seen[id] = true;
    NodeRecord r;
    if (node.contains("level") && !node["level"].is_null()) {
      if (!node["level"].is_number_integer() || node["level"].get<int>() < 0)
        throw ParseError("structure: node " + std::to_string(id) + " has a bad level");
      r.level = node["level"].get<int>();
    }
    if (node.contains("parent") && !node["parent"].is_null()) {
      if (!node["parent"].is_number_integer()) throw ParseError("structure: node " + std::to_string(id) + " has a bad parent");
      r.parent = node["parent"].get<int>();
      if (r.parent < 0 || r.parent >= n) throw ParseError("structure: node " + std::to_string(id) + " has an unknown parent");
    }
    if (node.contains("const")) {
      if (!node["const"].is_string()) throw ParseError("structure: const must be a string");
      r.tag = node["const"].get<std::string>();
    }
    records[id] = std::move(r);
  }
  return LeveledForest(std::move(records));
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline LeveledForest load_forest(const std::string& path) { return forest_from_json(parse_json_text(read_text_file(path))); }

}  // namespace lf
