#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/error.hpp"

namespace fca {

struct Concept {
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const Concept&, const Concept&) = default;
};

enum class Strategy { kAuto, kBottomUp, kTopDown };

inline Strategy parse_strategy(std::string_view s) {
  if (s == "auto") return Strategy::kAuto;
  if (s == "bottom-up") return Strategy::kBottomUp;
  if (s == "top-down") return Strategy::kTopDown;
  throw Error(ErrorCode::kUnknownMethod, "unknown strategy '" + std::string(s) + "'");
}

/// Bottom-up when there are fewer objects than attributes, top-down otherwise.
inline Strategy resolve_strategy(const Context& k, Strategy s) {
  if (s != Strategy::kAuto) return s;
  return k.num_objects() <= k.num_attributes() ? Strategy::kBottomUp : Strategy::kTopDown;
}

enum class EmitOrder {
  kDiscovery,  // when a canonical node is generated
  kBacktrack,  // when the search leaves a canonical node
};

struct CboOptions {
  Strategy strategy = Strategy::kAuto;
  EmitOrder order = EmitOrder::kDiscovery;
  /// Processes the generating items by ascending cardinality. Same concept
  /// set, different output order.
  bool cardinality_sort = false;
};

namespace detail {

// Close-by-One over generating items 0..n-1 of `k` (objects). `item_order`
// maps processing position to object index. `on_closure` fires once per
// (A u {i})'' computation, `emit` once per canonical node.
template <class OnClosure, class Emit>
void cbo_bottom_up(const Context& k, const std::vector<std::size_t>& item_order, EmitOrder order,
                   OnClosure&& on_closure, Emit&& emit) {
  const auto n = k.num_objects();
  // Work in processing-position space so canonicity is "no new item before i".
  std::vector<AttributeSet> rows;
  rows.reserve(n);
  for (auto g : item_order) rows.push_back(k.intent_of(g));
  std::vector<ObjectSet> cols(k.num_attributes(), ObjectSet(n));
  for (std::size_t p = 0; p < n; ++p) rows[p].for_each([&](std::size_t m) { cols[m].set(p); });
  auto extent_of = [&](const AttributeSet& b) {
    ObjectSet out = ObjectSet::full(n);
    b.for_each([&](std::size_t m) { out &= cols[m]; });
    return out;
  };
  auto to_original = [&](const ObjectSet& a) {
    ObjectSet out(n);
    a.for_each([&](std::size_t p) { out.set(item_order[p]); });
    return out;
  };

  auto rec = [&](auto&& self, const ObjectSet& a, const AttributeSet& b, std::size_t from) -> void {
    if (order == EmitOrder::kDiscovery) emit(Concept{to_original(a), b});
    for (std::size_t i = from; i < n; ++i) {
      if (a.test(i)) continue;
      AttributeSet b2 = b & rows[i];
      ObjectSet a2 = extent_of(b2);
      on_closure();
      if (!a2.equal_below(a, i)) continue;
      self(self, a2, b2, i + 1);
    }
    if (order == EmitOrder::kBacktrack) emit(Concept{to_original(a), b});
  };
  AttributeSet top_intent = AttributeSet::full(k.num_attributes());
  ObjectSet top_extent = extent_of(top_intent);
  on_closure();
  rec(rec, top_extent, top_intent, 0);
}

inline std::vector<std::size_t> item_order(const Context& k, bool by_cardinality) {
  std::vector<std::size_t> order(k.num_objects());
  std::iota(order.begin(), order.end(), 0);
  if (by_cardinality)
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return k.intent_of(a).count() < k.intent_of(b).count(); });
  return order;
}

}  // namespace detail

/// Runs Close-by-One and hands every concept to `emit` exactly once.
/// `on_closure` is called for each closure computation.
template <class Emit, class OnClosure = void (*)()>
void for_each_concept(const Context& k, const CboOptions& opt, Emit&& emit, OnClosure&& on_closure = [] {}) {
  if (resolve_strategy(k, opt.strategy) == Strategy::kBottomUp) {
    detail::cbo_bottom_up(k, detail::item_order(k, opt.cardinality_sort), opt.order, on_closure, emit);
  } else {
    const Context t = k.transposed();
    detail::cbo_bottom_up(t, detail::item_order(t, opt.cardinality_sort), opt.order, on_closure,
                          [&](const Concept& c) {
                            emit(Concept{c.intent.retag<ObjectTag>(), c.extent.retag<AttributeTag>()});
                          });
  }
}

inline std::vector<Concept> enumerate_concepts(const Context& k, Strategy strategy = Strategy::kAuto) {
  std::vector<Concept> out;
  for_each_concept(k, CboOptions{strategy}, [&](const Concept& c) { out.push_back(c); });
  return out;
}

inline std::vector<Concept> enumerate_concepts(const Context& k, const CboOptions& opt) {
  std::vector<Concept> out;
  for_each_concept(k, opt, [&](const Concept& c) { out.push_back(c); });
  return out;
}

/// Vertex of the bottom-up CbO tree.
struct CboNode {
  ObjectSet extent;
  AttributeSet intent;
  /// Object whose addition produced the node; npos at the root.
  std::size_t generator = npos;
  /// First object tried below this node.
  std::size_t next_candidate = 0;
  std::size_t parent = npos;
  std::vector<std::size_t> children;
};

/// Canonical CbO tree in preorder; node 0 is the root (empty set)''.
inline std::vector<CboNode> cbo_tree(const Context& k) {
  std::vector<CboNode> nodes;
  const auto n = k.num_objects();
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    const ObjectSet a = nodes[idx].extent;
    const AttributeSet b = nodes[idx].intent;
    for (std::size_t i = nodes[idx].next_candidate; i < n; ++i) {
      if (a.test(i)) continue;
      AttributeSet b2 = b & k.intent_of(i);
      ObjectSet a2 = k.derive(b2);
      if (!a2.equal_below(a, i)) continue;
      std::size_t child = nodes.size();
      std::size_t next = i + 1;
      while (next < n && a2.test(next)) ++next;
      nodes.push_back(CboNode{a2, b2, i, next, idx, {}});
      nodes[idx].children.push_back(child);
      self(self, child);
    }
  };
  ObjectSet root = k.close(k.no_objects());
  std::size_t first = 0;
  while (first < n && root.test(first)) ++first;
  nodes.push_back(CboNode{root, k.derive(root), npos, first, npos, {}});
  rec(rec, 0);
  return nodes;
}

/// Unique canonical generator sequence of a closed extent.
inline std::vector<std::size_t> canonical_generation(const Context& k, const ObjectSet& extent) {
  if (k.close(extent) != extent) throw Error(ErrorCode::kNotAnExtent, "object set is not closed");
  std::vector<std::size_t> seq;
  ObjectSet c = k.close(k.no_objects());
  while (c != extent) {
    const auto i = (extent - c).first();
    c = k.close(c.with(i));
    seq.push_back(i);
  }
  return seq;
}

/// Concepts plus covering arcs (lower, upper) of the extent order.
struct ConceptLattice {
  std::vector<Concept> concepts;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::size_t top = 0;
  std::size_t bottom = 0;

  std::size_t index_of_intent(const AttributeSet& intent) const {
    for (std::size_t i = 0; i < concepts.size(); ++i)
      if (concepts[i].intent == intent) return i;
    return npos;
  }
};

/// Lower covers of each concept are the inclusion-minimal intents among
/// (B u {m})'' for m outside B.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_relation(const Context& k,
                                                                          const std::vector<Concept>& concepts) {
  std::unordered_map<AttributeSet, std::size_t, BitSetHash> by_intent;
  for (std::size_t i = 0; i < concepts.size(); ++i) by_intent.emplace(concepts[i].intent, i);
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t up = 0; up < concepts.size(); ++up) {
    const auto& b = concepts[up].intent;
    std::unordered_set<AttributeSet, BitSetHash> seen;
    std::vector<AttributeSet> candidates;
    for (std::size_t m = 0; m < k.num_attributes(); ++m) {
      if (b.test(m)) continue;
      auto c = k.close(b.with(m));
      if (seen.insert(c).second) candidates.push_back(std::move(c));
    }
    std::vector<std::size_t> lows;
    for (const auto& c : candidates) {
      bool minimal = std::none_of(candidates.begin(), candidates.end(),
                                  [&](const AttributeSet& d) { return d.is_proper_subset_of(c); });
      if (!minimal) continue;
      auto it = by_intent.find(c);
      if (it == by_intent.end())
        throw Error(ErrorCode::kIncompleteConceptList, "concept with intent " + c.to_string() + " is missing");
      lows.push_back(it->second);
    }
    std::sort(lows.begin(), lows.end());
    for (auto lo : lows) arcs.emplace_back(lo, up);
  }
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

inline ConceptLattice build_lattice(const Context& k, const CboOptions& opt = {}) {
  ConceptLattice l;
  l.concepts = enumerate_concepts(k, opt);
  l.covers = covering_relation(k, l.concepts);
  for (std::size_t i = 0; i < l.concepts.size(); ++i) {
    if (l.concepts[i].extent.all()) l.top = i;
    if (l.concepts[i].intent.all()) l.bottom = i;
  }
  return l;
}

namespace detail {

inline void check_indices(const ConceptLattice& l, const std::vector<std::size_t>& js) {
  for (auto j : js)
    if (j >= l.concepts.size())
      throw Error(ErrorCode::kIndexOutOfRange, "concept index " + std::to_string(j) + " out of range");
}

}  // namespace detail

/// Infimum: (intersection of extents, (union of intents)''). Empty -> (G, G').
inline Concept meet(const Context& k, const ConceptLattice& l, const std::vector<std::size_t>& js) {
  detail::check_indices(l, js);
  ObjectSet a = k.all_objects();
  AttributeSet b = k.no_attributes();
  for (auto j : js) {
    a &= l.concepts[j].extent;
    b |= l.concepts[j].intent;
  }
  return {a, k.close(b)};
}

/// Supremum: ((union of extents)'', intersection of intents). Empty -> (M', M).
inline Concept join(const Context& k, const ConceptLattice& l, const std::vector<std::size_t>& js) {
  detail::check_indices(l, js);
  ObjectSet a = k.no_objects();
  AttributeSet b = k.all_attributes();
  for (auto j : js) {
    a |= l.concepts[j].extent;
    b &= l.concepts[j].intent;
  }
  return {k.close(a), b};
}

enum class Labeling { kFull, kReduced };

inline Labeling parse_labeling(std::string_view s) {
  if (s == "full") return Labeling::kFull;
  if (s == "reduced") return Labeling::kReduced;
  throw Error(ErrorCode::kUnknownMethod, "unknown labeling '" + std::string(s) + "'");
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string join_names(const std::vector<std::string>& names, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

}  // namespace detail

/// Graphviz digraph, arcs from lower to upper concept, drawn bottom to top.
/// Reduced labeling puts attribute m at ({m}', {m}'') and object g at ({g}'', {g}').
inline std::string to_dot(const Context& k, const ConceptLattice& l, Labeling labeling) {
  std::vector<std::vector<std::string>> upper(l.concepts.size()), lower(l.concepts.size());
  if (labeling == Labeling::kReduced) {
    for (std::size_t m = 0; m < k.num_attributes(); ++m) {
      auto i = l.index_of_intent(k.close(k.no_attributes().with(m)));
      if (i != npos) upper[i].push_back(k.attributes()[m]);
    }
    for (std::size_t g = 0; g < k.num_objects(); ++g) {
      auto i = l.index_of_intent(k.intent_of(g));
      if (i != npos) lower[i].push_back(k.objects()[g]);
    }
  } else {
    for (std::size_t i = 0; i < l.concepts.size(); ++i) {
      upper[i] = k.names(l.concepts[i].intent);
      lower[i] = k.names(l.concepts[i].extent);
    }
  }
  std::ostringstream os;
  os << "digraph concept_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.concepts.size(); ++i) {
    os << "  c" << i << " [label=\"" << detail::dot_escape(detail::join_names(upper[i], ", ")) << "\\n"
       << detail::dot_escape(detail::join_names(lower[i], ", ")) << "\"];\n";
  }
  for (auto [lo, up] : l.covers) os << "  c" << lo << " -> c" << up << ";\n";
  os << "}\n";
  return os.str();
}

/// Inter-arrival closure counts of the backtrack-emitting enumeration.
struct DelayStats {
  /// delays[i]: closures computed before output i; the final entry counts the
  /// work after the last output up to termination.
  std::vector<std::size_t> delays;
  std::size_t max_delay = 0;
  std::size_t total_steps = 0;
  std::size_t concept_count = 0;
};

inline DelayStats measure_delay(const Context& k, Strategy strategy = Strategy::kAuto) {
  DelayStats s;
  std::size_t since_last = 0;
  for_each_concept(
      k, CboOptions{strategy, EmitOrder::kBacktrack},
      [&](const Concept&) {
        s.delays.push_back(since_last);
        since_last = 0;
        ++s.concept_count;
      },
      [&] {
        ++since_last;
        ++s.total_steps;
      });
  s.delays.push_back(since_last);
  s.max_delay = *std::max_element(s.delays.begin(), s.delays.end());
  return s;
}

}  // namespace fca
