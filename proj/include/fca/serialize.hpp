#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fca/concepts.hpp"
#include "fca/context.hpp"
#include "fca/error.hpp"
#include "fca/implications.hpp"

namespace fca::json_io {

using nlohmann::json;

template <class Tag>
json names(const BasicBitSet<Tag>& s, const std::vector<std::string>& table) {
  json out = json::array();
  s.for_each([&](std::size_t i) { out.push_back(table[i]); });
  return out;
}

inline AttributeSet attribute_set(const json& j, const std::vector<std::string>& universe) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "attribute list must be an array");
  AttributeSet s(universe.size());
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(ErrorCode::kParse, "attribute names must be strings");
    const auto name = v.get<std::string>();
    std::size_t i = 0;
    while (i < universe.size() && universe[i] != name) ++i;
    if (i == universe.size()) throw Error(ErrorCode::kUnknownName, "unknown attribute '" + name + "'");
    s.set(i);
  }
  return s;
}

/// {objects, attributes, incidence: [[0|1]]}
inline json to_json(const Context& k) {
  json rows = json::array();
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    json row = json::array();
    for (std::size_t m = 0; m < k.num_attributes(); ++m) row.push_back(k.incident(g, m) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return {{"objects", k.objects()}, {"attributes", k.attributes()}, {"incidence", std::move(rows)}};
}

inline Context context_from_json(const json& j) {
  try {
    auto objects = j.at("objects").get<std::vector<std::string>>();
    auto attributes = j.at("attributes").get<std::vector<std::string>>();
    const auto& rows = j.at("incidence");
    if (!rows.is_array() || rows.size() != objects.size())
      throw Error(ErrorCode::kParse, "incidence must have one row per object");
    Context k(std::move(objects), std::move(attributes));
    for (std::size_t g = 0; g < rows.size(); ++g) {
      if (!rows[g].is_array() || rows[g].size() != k.num_attributes())
        throw Error(ErrorCode::kParse, "incidence row " + std::to_string(g) + " has the wrong width");
      for (std::size_t m = 0; m < k.num_attributes(); ++m) {
        const auto& c = rows[g][m];
        if (c == 1 || c == true) {
          k.set(g, m);
        } else if (!(c == 0 || c == false)) {
          throw Error(ErrorCode::kParse, "incidence cells must be 0 or 1");
        }
      }
    }
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

/// {premise, conclusion} with the conclusion in premise-disjoint form.
inline json to_json(const Implication& imp, const std::vector<std::string>& universe) {
  return {{"premise", names(imp.premise, universe)}, {"conclusion", names(imp.added(), universe)}};
}

inline json to_json(const ImplicationSet& l, const std::vector<std::string>& universe) {
  json out = json::array();
  for (const auto& i : l) out.push_back(to_json(i, universe));
  return out;
}

inline json to_json(const Context& k, const Concept& c) {
  return {{"extent", names(c.extent, k.objects())}, {"intent", names(c.intent, k.attributes())}};
}

/// {concepts: [{extent, intent}], covers: [[lower, upper]]}
inline json to_json(const Context& k, const ConceptLattice& l) {
  json concepts = json::array();
  for (const auto& c : l.concepts) concepts.push_back(to_json(k, c));
  json covers = json::array();
  for (const auto& [lo, hi] : l.covers) covers.push_back({lo, hi});
  return {{"concepts", std::move(concepts)}, {"covers", std::move(covers)}, {"top", l.top}, {"bottom", l.bottom}};
}

}  // namespace fca::json_io
