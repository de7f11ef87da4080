#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/error.hpp"

namespace fca {

/// Binary relation on the ground set 0..size()-1, stored row-wise:
/// row(i) holds every j with (i, j) in R.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, ElementSet(n)) {}
  Relation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) : Relation(n) {
    for (auto [i, j] : pairs) add(i, j);
  }

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.add(i, i);
    return r;
  }
  static Relation universal(std::size_t n) {
    Relation r(n);
    for (auto& row : r.rows_) row = ElementSet::full(n);
    return r;
  }

  std::size_t size() const { return rows_.size(); }
  bool has(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void add(std::size_t i, std::size_t j) {
    check_index(i);
    check_index(j);
    rows_[i].set(j);
  }
  void remove(std::size_t i, std::size_t j) { rows_[i].reset(j); }
  const ElementSet& row(std::size_t i) const { return rows_[i]; }
  ElementSet column(std::size_t j) const {
    ElementSet c(size());
    for (std::size_t i = 0; i < size(); ++i)
      if (has(i, j)) c.set(i);
    return c;
  }
  std::size_t pair_count() const {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) rows_[i].for_each([&](std::size_t j) { out.emplace_back(i, j); });
    return out;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != size())
      throw Error(ErrorCode::kSizeMismatch, "expected " + std::to_string(size()) + " labels");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw Error(ErrorCode::kDuplicateName, "duplicate label '" + l + "'");
    labels_ = std::move(labels);
  }
  std::string label(std::size_t i) const { return labels_.empty() ? std::to_string(i) : labels_[i]; }

  bool is_subset_of(const Relation& o) const {
    require_same_size(o);
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].is_subset_of(o.rows_[i])) return false;
    return true;
  }

  Relation& operator|=(const Relation& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < size(); ++i) rows_[i] |= o.rows_[i];
    return *this;
  }
  Relation& operator&=(const Relation& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < size(); ++i) rows_[i] &= o.rows_[i];
    return *this;
  }
  Relation& operator-=(const Relation& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < size(); ++i) rows_[i] -= o.rows_[i];
    return *this;
  }
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }
  friend Relation operator&(Relation a, const Relation& b) { return a &= b; }
  friend Relation operator-(Relation a, const Relation& b) { return a -= b; }

  /// Loops and labels are not compared.
  friend bool operator==(const Relation& a, const Relation& b) { return a.rows_ == b.rows_; }

  void require_same_size(const Relation& o) const {
    if (o.size() != size())
      throw Error(ErrorCode::kSizeMismatch,
                  "relation sizes differ: " + std::to_string(size()) + " vs " + std::to_string(o.size()));
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= size()) throw Error(ErrorCode::kIndexOutOfRange, "element " + std::to_string(i) + " out of range");
  }

  std::vector<ElementSet> rows_;
  std::vector<std::string> labels_;
};

inline Relation inverse(const Relation& r) {
  Relation out(r.size());
  for (auto [i, j] : r.pairs()) out.add(j, i);
  if (!r.labels().empty()) out.set_labels(r.labels());
  return out;
}

inline Relation complement(const Relation& r) {
  Relation out = Relation::universal(r.size()) - r;
  if (!r.labels().empty()) out.set_labels(r.labels());
  return out;
}

/// Boolean matrix product: (x, y) in P.R iff some z has xPz and zRy.
inline Relation compose(const Relation& p, const Relation& r) {
  p.require_same_size(r);
  Relation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ElementSet acc(p.size());
    p.row(i).for_each([&](std::size_t z) { acc |= r.row(z); });
    acc.for_each([&](std::size_t j) { out.add(i, j); });
  }
  return out;
}

/// R . R^-1
inline Relation kernel(const Relation& r) { return compose(r, inverse(r)); }

/// Least transitive superset of r, by repeated squaring until fixpoint.
inline Relation transitive_closure(const Relation& r, bool reflexive = false) {
  Relation t = r;
  while (true) {
    Relation next = t | compose(t, t);
    if (next == t) break;
    t = std::move(next);
  }
  if (reflexive) t |= Relation::identity(r.size());
  if (!r.labels().empty()) t.set_labels(r.labels());
  return t;
}

struct RelationProperties {
  bool reflexive = false;
  bool antireflexive = false;
  bool symmetric = false;
  bool asymmetric = false;
  bool antisymmetric = false;
  bool transitive = false;
  bool linear = false;

  friend bool operator==(const RelationProperties&, const RelationProperties&) = default;
};

/// Matrix characterizations of the standard properties.
inline RelationProperties check_properties(const Relation& r) {
  const auto n = r.size();
  const Relation id = Relation::identity(n);
  const Relation inv = inverse(r);
  const auto empty = [](const Relation& x) { return x.pair_count() == 0; };
  RelationProperties p;
  p.reflexive = id.is_subset_of(r);
  p.antireflexive = empty(r & id);
  p.symmetric = r == inv;
  p.asymmetric = empty(r & inv);
  p.antisymmetric = (r & inv).is_subset_of(id);
  p.transitive = compose(r, r).is_subset_of(r);
  p.linear = (r | id | inv) == Relation::universal(n);
  return p;
}

inline bool is_partial_order(const Relation& r) {
  auto p = check_properties(r);
  return p.reflexive && p.antisymmetric && p.transitive;
}

inline bool is_equivalence(const Relation& r) {
  auto p = check_properties(r);
  return p.reflexive && p.symmetric && p.transitive;
}

/// Relation known to be reflexive, antisymmetric and transitive.
class Poset {
 public:
  explicit Poset(Relation r) : relation_(std::move(r)) {
    if (!is_partial_order(relation_))
      throw Error(ErrorCode::kNotAPartialOrder, "relation is not reflexive, antisymmetric and transitive");
  }
  const Relation& relation() const { return relation_; }
  std::size_t size() const { return relation_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return relation_.has(x, y); }
  bool less(std::size_t x, std::size_t y) const { return x != y && relation_.has(x, y); }

 private:
  Relation relation_;
};

/// Disjoint covering family of nonempty blocks, each sorted ascending.
struct Partition {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> blocks;

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition equivalence_classes(const Relation& r) {
  if (!is_equivalence(r)) throw Error(ErrorCode::kNotAnEquivalence, "relation is not an equivalence");
  Partition p{r.size(), {}};
  ElementSet seen(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (seen.test(i)) continue;
    p.blocks.push_back(r.row(i).indices());
    seen |= r.row(i);
  }
  return p;
}

/// "Same block" relation of a partition.
inline Relation induced_equivalence(const Partition& p) {
  Relation r(p.size);
  for (const auto& b : p.blocks)
    for (auto i : b)
      for (auto j : b) r.add(i, j);
  return r;
}

/// Strict order with transitively implied pairs removed.
inline Relation covering_relation(const Poset& p) {
  const auto n = p.size();
  Relation cover(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!p.less(x, y)) continue;
      bool direct = true;
      for (std::size_t z = 0; z < n && direct; ++z)
        if (p.less(x, z) && p.less(z, y)) direct = false;
      if (direct) cover.add(x, y);
    }
  if (!p.relation().labels().empty()) cover.set_labels(p.relation().labels());
  return cover;
}

/// Repeatedly removes the minimal element with the least index.
/// Returns the element order: result[k] is the k-th element.
inline std::vector<std::size_t> topological_sort(const Relation& r) {
  const auto n = r.size();
  std::vector<std::size_t> order;
  ElementSet remaining = ElementSet::full(n);
  while (remaining.any()) {
    std::size_t chosen = npos;
    for (auto x = remaining.first(); x != npos && chosen == npos; x = remaining.next(x + 1)) {
      bool minimal = true;
      for (auto y = remaining.first(); y != npos && minimal; y = remaining.next(y + 1))
        if (y != x && r.has(y, x)) minimal = false;
      if (minimal) chosen = x;
    }
    if (chosen == npos) throw Error(ErrorCode::kCycleDetected, "relation contains a cycle; no minimal element left");
    order.push_back(chosen);
    remaining.reset(chosen);
  }
  return order;
}

inline constexpr std::size_t kMaxLinearExtensionSize = 10;

/// Every linear extension, each as an element order. Only for size <= 10.
inline std::vector<std::vector<std::size_t>> linear_extensions(const Poset& p) {
  const auto n = p.size();
  if (n > kMaxLinearExtensionSize)
    throw Error(ErrorCode::kGuardExceeded, "linear extensions are enumerated only for at most 10 elements");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  ElementSet used(n);
  auto rec = [&](auto&& self) -> void {
    if (current.size() == n) {
      out.push_back(current);
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (used.test(x)) continue;
      bool ready = true;
      for (std::size_t y = 0; y < n && ready; ++y)
        if (!used.test(y) && p.less(y, x)) ready = false;
      if (!ready) continue;
      used.set(x);
      current.push_back(x);
      self(self);
      current.pop_back();
      used.reset(x);
    }
  };
  rec(rec);
  return out;
}

/// Linear order placing order[k] before order[k+1], reflexive.
inline Relation linear_order_from(const std::vector<std::size_t>& order) {
  Relation r(order.size());
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a; b < order.size(); ++b) r.add(order[a], order[b]);
  return r;
}

/// Down-set of q.
inline ElementSet order_ideal(const Poset& p, const ElementSet& q) {
  ElementSet out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.relation().row(x).intersects(q)) out.set(x);
  return out;
}

/// Up-set of q.
inline ElementSet order_filter(const Poset& p, const ElementSet& q) {
  ElementSet out(p.size());
  q.for_each([&](std::size_t x) { out |= p.relation().row(x); });
  return out;
}

inline bool is_order_ideal(const Poset& p, const ElementSet& j) {
  for (auto x = j.first(); x != npos; x = j.next(x + 1))
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(y, x) && !j.test(y)) return false;
  return true;
}

}  // namespace fca
