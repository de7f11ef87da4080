#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/error.hpp"
#include "fca/next_closure.hpp"

namespace fca {

/// A -> B over a fixed attribute universe. The conclusion is stored in full;
/// `added()` gives the premise-disjoint form used for display.
struct Implication {
  AttributeSet premise;
  AttributeSet conclusion;

  AttributeSet added() const { return conclusion - premise; }

  friend bool operator==(const Implication&, const Implication&) = default;
};

/// Implications sharing one attribute universe.
class ImplicationSet {
 public:
  ImplicationSet() = default;
  explicit ImplicationSet(std::size_t width) : width_(width) {}
  ImplicationSet(std::size_t width, std::vector<Implication> items) : width_(width) {
    for (auto& i : items) add(std::move(i));
  }

  std::size_t width() const { return width_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Implication& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Implication>& items() const { return items_; }

  void add(Implication imp) {
    if (imp.premise.size() != width_ || imp.conclusion.size() != width_)
      throw Error(ErrorCode::kUniverseMismatch, "implication width differs from universe width " + std::to_string(width_));
    items_.push_back(std::move(imp));
  }

  ImplicationSet without(std::size_t i) const {
    ImplicationSet out(width_);
    for (std::size_t j = 0; j < items_.size(); ++j)
      if (j != i) out.items_.push_back(items_[j]);
    return out;
  }

  /// Sorted lectically by premise, then conclusion.
  ImplicationSet sorted() const {
    ImplicationSet out = *this;
    std::sort(out.items_.begin(), out.items_.end(), [](const Implication& a, const Implication& b) {
      if (a.premise != b.premise) return lectic_less(a.premise, b.premise);
      return lectic_less(a.conclusion, b.conclusion);
    });
    return out;
  }

  std::vector<AttributeSet> premises() const {
    std::vector<AttributeSet> out;
    for (const auto& i : items_) out.push_back(i.premise);
    return out;
  }

  friend bool operator==(const ImplicationSet&, const ImplicationSet&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<Implication> items_;
};

/// A' is contained in B'.
inline bool is_valid(const Context& k, const Implication& imp) {
  return k.derive(imp.premise).is_subset_of(k.derive(imp.conclusion));
}

/// T is a model of A -> B: A not contained in T, or B contained in T.
inline bool respects(const AttributeSet& t, const Implication& imp) {
  return !imp.premise.is_subset_of(t) || imp.conclusion.is_subset_of(t);
}

inline bool respects(const AttributeSet& t, const ImplicationSet& l) {
  return std::all_of(l.begin(), l.end(), [&](const Implication& i) { return respects(t, i); });
}

namespace detail {

inline void require_width(const AttributeSet& x, const ImplicationSet& l) {
  if (x.size() != l.width())
    throw Error(ErrorCode::kUniverseMismatch, "set width " + std::to_string(x.size()) + " vs universe " +
                                                  std::to_string(l.width()));
}

}  // namespace detail

/// Repeated passes over the implications; each one is dropped once applied.
inline AttributeSet simp_closure(AttributeSet x, const ImplicationSet& l) {
  detail::require_width(x, l);
  std::vector<const Implication*> pending;
  for (const auto& i : l) pending.push_back(&i);
  bool stable = false;
  while (!stable) {
    stable = true;
    for (auto it = pending.begin(); it != pending.end();) {
      if ((*it)->premise.is_subset_of(x)) {
        x |= (*it)->conclusion;
        stable = false;
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  }
  return x;
}

/// Counter/attribute-list structure for linear-time implicational closure.
/// Build once per implication set, reuse for many closures.
class LinClosureIndex {
 public:
  explicit LinClosureIndex(const ImplicationSet& l) : l_(&l), initial_(l.size()), lists_(l.width()) {
    for (std::size_t j = 0; j < l.size(); ++j) {
      initial_[j] = l[j].premise.count();
      l[j].premise.for_each([&](std::size_t a) { lists_[a].push_back(j); });
    }
  }

  /// Closure of x. If `counters` is given it receives the final counter of
  /// every implication (premise attributes never reached).
  AttributeSet close(AttributeSet x, std::vector<std::size_t>* counters = nullptr) const {
    detail::require_width(x, *l_);
    std::vector<std::size_t> count = initial_;
    for (std::size_t j = 0; j < l_->size(); ++j)
      if (count[j] == 0) x |= (*l_)[j].conclusion;
    std::vector<std::size_t> update = x.indices();
    while (!update.empty()) {
      const auto m = update.back();
      update.pop_back();
      for (auto j : lists_[m]) {
        if (--count[j] != 0) continue;
        const AttributeSet add = (*l_)[j].conclusion - x;
        x |= add;
        add.for_each([&](std::size_t a) { update.push_back(a); });
      }
    }
    if (counters) *counters = std::move(count);
    return x;
  }

 private:
  const ImplicationSet* l_;
  std::vector<std::size_t> initial_;
  std::vector<std::vector<std::size_t>> lists_;
};

inline AttributeSet lin_closure(const AttributeSet& x, const ImplicationSet& l) { return LinClosureIndex(l).close(x); }

/// Closure where P -> Q fires only on sets strictly containing P. Closed sets
/// of this operator are the models of l together with the premises of l
/// that are already models of the other implications; with l a partial
/// Duquenne-Guigues basis these are the intents and pseudo-intents.
inline AttributeSet strict_closure(AttributeSet x, const ImplicationSet& l) {
  detail::require_width(x, l);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& i : l) {
      if (i.premise.is_proper_subset_of(x) && !i.conclusion.is_subset_of(x)) {
        x |= i.conclusion;
        changed = true;
      }
    }
  }
  return x;
}

/// One simultaneous pass: x plus every conclusion whose premise is in x.
inline AttributeSet apply_once(const AttributeSet& x, const ImplicationSet& l) {
  detail::require_width(x, l);
  AttributeSet out = x;
  for (const auto& i : l)
    if (i.premise.is_subset_of(x)) out |= i.conclusion;
  return out;
}

/// Conclusion lies in the implicational closure of the premise.
inline bool follows_semantically(const ImplicationSet& l, const Implication& imp) {
  return imp.conclusion.is_subset_of(simp_closure(imp.premise, l));
}

// ---------------------------------------------------------------------------
// Duquenne-Guigues basis

enum class BasisVariant { kPlain, kOptimized };

inline BasisVariant parse_basis_variant(std::string_view s) {
  if (s == "plain") return BasisVariant::kPlain;
  if (s == "optimized") return BasisVariant::kOptimized;
  throw Error(ErrorCode::kUnknownMethod, "unknown basis variant '" + std::string(s) + "'");
}

namespace detail {

inline ImplicationSet dg_plain(const Context& k) {
  const auto n = k.num_attributes();
  ImplicationSet l(n);
  auto op = [&](const AttributeSet& x) { return strict_closure(x, l); };
  std::optional<AttributeSet> a = AttributeSet(n);
  while (a) {
    AttributeSet c = k.close(*a);
    if (c != *a) l.add({*a, c});
    a = next_closure(*a, op);
  }
  return l;
}

// Skips candidates that NextClosure would reject anyway and jumps straight
// to A'' when it is the lectic successor.
inline ImplicationSet dg_optimized(const Context& k) {
  const auto n = k.num_attributes();
  ImplicationSet l(n);
  const AttributeSet all = AttributeSet::full(n);
  AttributeSet a(n);
  std::size_t m = 0;
  while (a != all) {
    const AttributeSet c = k.close(a);
    if (c != a) l.add({a, c});
    if ((c - a).equal_below(AttributeSet(n), m)) {
      a = c;
      m = n - 1;
    } else {
      a = a.prefix(m + 1);
    }
    bool found = false;
    for (std::size_t i = m + 1; i-- > 0;) {
      if (a.test(i)) {
        a.reset(i);
      } else {
        AttributeSet b = strict_closure(a.with(i), l);
        if (b.equal_below(a, i)) {
          a = std::move(b);
          m = i;
          found = true;
          break;
        }
      }
    }
    if (!found) break;
  }
  return l;
}

}  // namespace detail

/// Duquenne-Guigues basis: one implication P -> P'' per pseudo-intent P,
/// in lectic order of premises.
inline ImplicationSet duquenne_guigues(const Context& k, BasisVariant variant = BasisVariant::kPlain) {
  return variant == BasisVariant::kPlain ? detail::dg_plain(k) : detail::dg_optimized(k);
}

inline constexpr std::size_t kPseudoIntentGuard = 20;

/// Evaluates the recursive definition over all subsets of p, smallest first.
inline bool is_pseudo_intent(const Context& k, const AttributeSet& p) {
  if (k.num_attributes() > kPseudoIntentGuard)
    throw Error(ErrorCode::kGuardExceeded, "pseudo-intent test is limited to 20 attributes");
  const auto members = p.indices();
  const std::size_t total = std::size_t{1} << members.size();
  std::vector<std::pair<AttributeSet, AttributeSet>> found;  // (pseudo-intent, closure)
  for (std::size_t mask = 0; mask < total; ++mask) {
    AttributeSet q = k.no_attributes();
    for (std::size_t b = 0; b < members.size(); ++b)
      if (mask >> b & 1U) q.set(members[b]);
    const AttributeSet qc = k.close(q);
    if (qc == q) continue;
    bool pseudo = std::all_of(found.begin(), found.end(), [&](const auto& r) {
      return !r.first.is_proper_subset_of(q) || r.second.is_subset_of(q);
    });
    if (!pseudo) continue;
    if (mask == total - 1) return true;
    found.emplace_back(q, qc);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Hypergraph transversals

struct Hypergraph {
  std::size_t vertices = 0;
  std::vector<ElementSet> edges;
};

/// Inclusion-minimal vertex sets meeting every edge, in lectic order.
/// Edges are folded in one at a time, keeping only minimal partial
/// transversals after each step.
inline std::vector<ElementSet> minimal_transversals(const Hypergraph& h) {
  std::vector<ElementSet> current{ElementSet(h.vertices)};
  for (const auto& edge : h.edges) {
    std::vector<ElementSet> next;
    for (const auto& t : current) {
      if (t.intersects(edge)) {
        next.push_back(t);
      } else {
        edge.for_each([&](std::size_t v) { next.push_back(t.with(v)); });
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      return a.count() != b.count() ? a.count() < b.count() : lectic_less(a, b);
    });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.clear();
    for (auto& t : next) {
      bool minimal = std::none_of(current.begin(), current.end(), [&](const ElementSet& s) { return s.is_subset_of(t); });
      if (minimal) current.push_back(std::move(t));
    }
  }
  std::sort(current.begin(), current.end(), [](const auto& a, const auto& b) { return lectic_less(a, b); });
  return current;
}

// ---------------------------------------------------------------------------
// Generators and proper premises

struct MinimalGenerator {
  AttributeSet generator;
  /// generator differs from its closure
  bool nontrivial = false;
};

/// Minimal D with D'' = closed. D generates iff it meets closed \ g' for
/// every object g outside closed', so these are minimal transversals.
inline std::vector<MinimalGenerator> minimal_generators(const Context& k, const AttributeSet& closed) {
  if (k.close(closed) != closed) throw Error(ErrorCode::kNotClosed, "attribute set is not closed");
  const ObjectSet ext = k.derive(closed);
  Hypergraph h{k.num_attributes(), {}};
  for (std::size_t g = 0; g < k.num_objects(); ++g)
    if (!ext.test(g)) h.edges.push_back((closed - k.intent_of(g)).retag<ElementTag>());
  std::vector<MinimalGenerator> out;
  for (const auto& t : minimal_transversals(h)) {
    auto d = t.retag<AttributeTag>();
    out.push_back({d, d != closed});
  }
  return out;
}

/// m is missing from g' but present in every strictly larger object intent.
inline bool arrow_down(const Context& k, std::size_t g, std::size_t m) {
  const auto& gi = k.intent_of(g);
  if (gi.test(m)) return false;
  for (std::size_t h = 0; h < k.num_objects(); ++h)
    if (gi.is_proper_subset_of(k.intent_of(h)) && !k.intent_of(h).test(m)) return false;
  return true;
}

/// Literal proper-premise test: A'' differs from A together with the
/// closures of all its one-element-smaller subsets.
inline bool is_proper_premise(const Context& k, const AttributeSet& a) {
  AttributeSet acc = a;
  a.for_each([&](std::size_t n) { acc |= k.close(a.without(n)); });
  return k.close(a) != acc;
}

/// Proper premises P with m in P'' \ (P u closures of its maximal subsets),
/// found as minimal transversals of {M \ g' \ {m} : g arrow-down m}.
inline std::vector<AttributeSet> proper_premises_for(const Context& k, std::size_t m) {
  Hypergraph h{k.num_attributes(), {}};
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    if (!arrow_down(k, g, m)) continue;
    auto edge = (~k.intent_of(g)).without(m).retag<ElementTag>();
    if (edge.none()) return {};
    h.edges.push_back(std::move(edge));
  }
  std::vector<AttributeSet> out;
  for (const auto& t : minimal_transversals(h)) out.push_back(t.retag<AttributeTag>());
  return out;
}

/// Canonical direct basis {P -> P'' : P proper premise}, premises in lectic order.
inline ImplicationSet proper_premises(const Context& k) {
  std::vector<AttributeSet> premises;
  for (std::size_t m = 0; m < k.num_attributes(); ++m)
    for (auto& p : proper_premises_for(k, m)) premises.push_back(std::move(p));
  std::sort(premises.begin(), premises.end(), [](const auto& a, const auto& b) { return lectic_less(a, b); });
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
  ImplicationSet out(k.num_attributes());
  for (auto& p : premises) {
    auto c = k.close(p);
    out.add({std::move(p), std::move(c)});
  }
  return out;
}

/// Every intent in lectic order.
inline std::vector<AttributeSet> all_intents(const Context& k) {
  return all_closed_sets<AttributeTag>(k.num_attributes(), [&](const AttributeSet& x) { return k.close(x); });
}

/// {D -> D'' : D a nontrivial minimal generator}.
inline ImplicationSet generator_basis(const Context& k) {
  ImplicationSet out(k.num_attributes());
  for (const auto& intent : all_intents(k))
    for (auto& g : minimal_generators(k, intent))
      if (g.nontrivial) out.add({g.generator, intent});
  return out.sorted();
}

}  // namespace fca
