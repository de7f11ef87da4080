#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/error.hpp"

namespace fca {

namespace detail {

inline std::unordered_map<std::string, std::size_t> index_names(const std::vector<std::string>& names,
                                                                std::string_view what) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!idx.emplace(names[i], i).second)
      throw Error(ErrorCode::kDuplicateName, "duplicate " + std::string(what) + " name '" + names[i] + "'");
  return idx;
}

}  // namespace detail

/// Formal context (G, M, I). Rows are object intents, columns attribute
/// extents; both views are kept in sync so either derivation is a row scan.
class Context {
 public:
  Context() = default;
  Context(std::vector<std::string> objects, std::vector<std::string> attributes)
      : objects_(std::move(objects)),
        attributes_(std::move(attributes)),
        object_index_(detail::index_names(objects_, "object")),
        attribute_index_(detail::index_names(attributes_, "attribute")),
        rows_(objects_.size(), AttributeSet(attributes_.size())),
        cols_(attributes_.size(), ObjectSet(objects_.size())) {}

  /// Builds from object intents given as rows of attribute indices.
  static Context from_rows(std::vector<std::string> objects, std::vector<std::string> attributes,
                           const std::vector<std::vector<std::size_t>>& rows) {
    Context k(std::move(objects), std::move(attributes));
    if (rows.size() != k.num_objects()) throw Error(ErrorCode::kSizeMismatch, "row count differs from object count");
    for (std::size_t g = 0; g < rows.size(); ++g)
      for (auto m : rows[g]) k.set(g, m);
    return k;
  }

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_attributes() const { return attributes_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  bool incident(std::size_t g, std::size_t m) const { return rows_[g].test(m); }
  void set(std::size_t g, std::size_t m, bool v = true) {
    if (g >= num_objects() || m >= num_attributes())
      throw Error(ErrorCode::kIndexOutOfRange, "incidence (" + std::to_string(g) + ", " + std::to_string(m) + ")");
    rows_[g].assign(m, v);
    cols_[m].assign(g, v);
  }

  /// Object intent g'.
  const AttributeSet& intent_of(std::size_t g) const { return rows_[g]; }
  /// Attribute extent m'.
  const ObjectSet& extent_of(std::size_t m) const { return cols_[m]; }

  /// Appends an object with the given intent.
  std::size_t add_object(const std::string& name, const AttributeSet& intent) {
    if (intent.size() != num_attributes()) throw Error(ErrorCode::kUniverseMismatch, "intent width mismatch");
    if (!object_index_.emplace(name, objects_.size()).second)
      throw Error(ErrorCode::kDuplicateName, "duplicate object name '" + name + "'");
    objects_.push_back(name);
    rows_.push_back(intent);
    for (auto& c : cols_) {
      ObjectSet grown(objects_.size());
      c.for_each([&](std::size_t g) { grown.set(g); });
      c = std::move(grown);
    }
    intent.for_each([&](std::size_t m) { cols_[m].set(objects_.size() - 1); });
    return objects_.size() - 1;
  }

  std::optional<std::size_t> find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_attribute(const std::string& name) const {
    auto it = attribute_index_.find(name);
    if (it == attribute_index_.end()) return std::nullopt;
    return it->second;
  }

  AttributeSet no_attributes() const { return AttributeSet(num_attributes()); }
  AttributeSet all_attributes() const { return AttributeSet::full(num_attributes()); }
  ObjectSet no_objects() const { return ObjectSet(num_objects()); }
  ObjectSet all_objects() const { return ObjectSet::full(num_objects()); }

  AttributeSet attribute_set(const std::vector<std::string>& names) const {
    AttributeSet s = no_attributes();
    for (const auto& n : names) {
      auto i = find_attribute(n);
      if (!i) throw Error(ErrorCode::kUnknownName, "unknown attribute '" + n + "'");
      s.set(*i);
    }
    return s;
  }
  ObjectSet object_set(const std::vector<std::string>& names) const {
    ObjectSet s = no_objects();
    for (const auto& n : names) {
      auto i = find_object(n);
      if (!i) throw Error(ErrorCode::kUnknownName, "unknown object '" + n + "'");
      s.set(*i);
    }
    return s;
  }
  std::vector<std::string> names(const AttributeSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t m) { out.push_back(attributes_[m]); });
    return out;
  }
  std::vector<std::string> names(const ObjectSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t g) { out.push_back(objects_[g]); });
    return out;
  }

  /// A' : attributes shared by every object of A.
  AttributeSet derive(const ObjectSet& a) const {
    require_width(a.size(), num_objects(), "object set");
    AttributeSet out = all_attributes();
    a.for_each([&](std::size_t g) { out &= rows_[g]; });
    return out;
  }
  /// B' : objects having every attribute of B.
  ObjectSet derive(const AttributeSet& b) const {
    require_width(b.size(), num_attributes(), "attribute set");
    ObjectSet out = all_objects();
    b.for_each([&](std::size_t m) { out &= cols_[m]; });
    return out;
  }
  AttributeSet close(const AttributeSet& b) const { return derive(derive(b)); }
  ObjectSet close(const ObjectSet& a) const { return derive(derive(a)); }

  /// (M, G, I^-1)
  Context transposed() const {
    Context t(attributes_, objects_);
    for (std::size_t g = 0; g < num_objects(); ++g) rows_[g].for_each([&](std::size_t m) { t.set(m, g); });
    return t;
  }

  /// Keeps the listed objects and attributes, in the given order.
  Context subcontext(const std::vector<std::size_t>& objs, const std::vector<std::size_t>& attrs) const {
    std::vector<std::string> on, an;
    for (auto g : objs) on.push_back(objects_[g]);
    for (auto m : attrs) an.push_back(attributes_[m]);
    Context k(std::move(on), std::move(an));
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = 0; j < attrs.size(); ++j)
        if (incident(objs[i], attrs[j])) k.set(i, j);
    return k;
  }

  friend bool operator==(const Context& a, const Context& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  static void require_width(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
      throw Error(ErrorCode::kUniverseMismatch, std::string(what) + " has width " + std::to_string(got) +
                                                    ", context expects " + std::to_string(want));
  }

  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::unordered_map<std::string, std::size_t> attribute_index_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> cols_;
};

// ---------------------------------------------------------------------------
// Preprocessing

struct ClarifyResult {
  Context context;
  /// For each original object: original index of its kept representative.
  std::vector<std::size_t> object_representative;
  std::vector<std::size_t> attribute_representative;
  /// Original indices kept, ascending.
  std::vector<std::size_t> kept_objects;
  std::vector<std::size_t> kept_attributes;
};

namespace detail {

template <class Row>
std::vector<std::size_t> representatives(const std::vector<Row>& rows) {
  std::vector<std::size_t> rep(rows.size());
  std::unordered_map<Row, std::size_t, BitSetHash> first;
  for (std::size_t i = 0; i < rows.size(); ++i) rep[i] = first.emplace(rows[i], i).first->second;
  return rep;
}

inline std::vector<std::size_t> kept_of(const std::vector<std::size_t>& rep) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < rep.size(); ++i)
    if (rep[i] == i) kept.push_back(i);
  return kept;
}

}  // namespace detail

/// Merges equal rows and equal columns; the smallest index of each class stays.
inline ClarifyResult clarify(const Context& k) {
  std::vector<AttributeSet> rows;
  std::vector<ObjectSet> cols;
  for (std::size_t g = 0; g < k.num_objects(); ++g) rows.push_back(k.intent_of(g));
  for (std::size_t m = 0; m < k.num_attributes(); ++m) cols.push_back(k.extent_of(m));
  ClarifyResult r;
  r.object_representative = detail::representatives(rows);
  r.attribute_representative = detail::representatives(cols);
  r.kept_objects = detail::kept_of(r.object_representative);
  r.kept_attributes = detail::kept_of(r.attribute_representative);
  r.context = k.subcontext(r.kept_objects, r.kept_attributes);
  return r;
}

struct ReduceResult {
  Context context;
  /// Original indices kept, ascending.
  std::vector<std::size_t> kept;
  /// Original indices merged away as duplicates before reduction.
  std::vector<std::size_t> merged;
  /// Original indices of reducible entries removed.
  std::vector<std::size_t> removed;
};

/// Removes attributes whose extent is G or the intersection of the extents
/// strictly containing it. Duplicate columns are merged first.
inline ReduceResult reduce_attributes(const Context& k) {
  std::vector<ObjectSet> cols;
  for (std::size_t m = 0; m < k.num_attributes(); ++m) cols.push_back(k.extent_of(m));
  const auto rep = detail::representatives(cols);
  ReduceResult r;
  std::vector<std::size_t> candidates;
  for (std::size_t m = 0; m < rep.size(); ++m) (rep[m] == m ? candidates : r.merged).push_back(m);
  for (auto m : candidates) {
    ObjectSet meet = k.all_objects();
    for (auto n : candidates)
      if (n != m && cols[m].is_proper_subset_of(cols[n])) meet &= cols[n];
    (meet == cols[m] ? r.removed : r.kept).push_back(m);
  }
  std::vector<std::size_t> all_objects(k.num_objects());
  std::iota(all_objects.begin(), all_objects.end(), 0);
  r.context = k.subcontext(all_objects, r.kept);
  return r;
}

/// Dual of reduce_attributes.
inline ReduceResult reduce_objects(const Context& k) {
  ReduceResult r = reduce_attributes(k.transposed());
  r.context = r.context.transposed();
  return r;
}

enum class Axis { kObjects, kAttributes };
enum class SortDirection { kAscending, kDescending };

struct SortResult {
  Context context;
  /// permutation[new position] = original index.
  std::vector<std::size_t> permutation;
};

/// Stable sort of rows (objects) or columns (attributes) by their number of crosses.
inline SortResult sort_by_cardinality(const Context& k, Axis axis, SortDirection dir = SortDirection::kAscending) {
  const bool objs = axis == Axis::kObjects;
  const auto n = objs ? k.num_objects() : k.num_attributes();
  std::vector<std::size_t> weight(n), perm(n);
  for (std::size_t i = 0; i < n; ++i) weight[i] = objs ? k.intent_of(i).count() : k.extent_of(i).count();
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return dir == SortDirection::kAscending ? weight[a] < weight[b] : weight[a] > weight[b];
  });
  std::vector<std::size_t> other(objs ? k.num_attributes() : k.num_objects());
  std::iota(other.begin(), other.end(), 0);
  return {objs ? k.subcontext(perm, other) : k.subcontext(other, perm), perm};
}

// ---------------------------------------------------------------------------
// Many-valued contexts

/// Complete many-valued context: every cell holds exactly one value token.
class ManyValuedContext {
 public:
  ManyValuedContext() = default;
  ManyValuedContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                    std::vector<std::vector<std::string>> values)
      : objects_(std::move(objects)), attributes_(std::move(attributes)), values_(std::move(values)) {
    detail::index_names(objects_, "object");
    detail::index_names(attributes_, "attribute");
    if (values_.size() != objects_.size()) throw Error(ErrorCode::kSizeMismatch, "value rows differ from object count");
    for (std::size_t g = 0; g < values_.size(); ++g)
      if (values_[g].size() != attributes_.size())
        throw Error(ErrorCode::kSizeMismatch, "object '" + objects_[g] + "' has " + std::to_string(values_[g].size()) +
                                                  " values, expected " + std::to_string(attributes_.size()));
  }

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_attributes() const { return attributes_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::string& value(std::size_t g, std::size_t m) const { return values_[g][m]; }
  const std::vector<std::vector<std::string>>& values() const { return values_; }

  /// Distinct values of attribute m, lexicographically sorted.
  std::vector<std::string> observed_values(std::size_t m) const {
    std::set<std::string> s;
    for (const auto& row : values_) s.insert(row[m]);
    return {s.begin(), s.end()};
  }

  ManyValuedContext without_object(std::size_t g) const {
    auto o = objects_;
    auto v = values_;
    o.erase(o.begin() + static_cast<std::ptrdiff_t>(g));
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(g));
    return {std::move(o), attributes_, std::move(v)};
  }

  friend bool operator==(const ManyValuedContext&, const ManyValuedContext&) = default;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<std::vector<std::string>> values_;
};

enum class ScaleMethod { kNominal, kInterordinal };

inline ScaleMethod parse_scale_method(std::string_view s) {
  if (s == "nominal") return ScaleMethod::kNominal;
  if (s == "interordinal") return ScaleMethod::kInterordinal;
  throw Error(ErrorCode::kUnknownMethod, "unknown scaling method '" + std::string(s) + "'");
}

/// Per-attribute value order for interordinal scaling; attributes not listed
/// use lexicographic token order.
using ValueOrders = std::map<std::string, std::vector<std::string>>;

/// Nominal: one attribute "m=w" per observed value.
/// Interordinal: "m<=w" for every value, then "m>=w" for every value.
inline Context scale(const ManyValuedContext& mv, ScaleMethod method, const ValueOrders& orders = {}) {
  struct Column {
    std::string name;
    std::size_t attr;
    std::size_t rank;
    int kind;  // 0: equal, 1: at most, 2: at least
  };
  std::vector<Column> columns;
  std::vector<std::unordered_map<std::string, std::size_t>> ranks(mv.num_attributes());
  for (std::size_t m = 0; m < mv.num_attributes(); ++m) {
    auto values = mv.observed_values(m);
    const auto& name = mv.attributes()[m];
    if (auto it = orders.find(name); it != orders.end() && method == ScaleMethod::kInterordinal) {
      const auto& declared = it->second;
      for (const auto& v : values)
        if (std::find(declared.begin(), declared.end(), v) == declared.end())
          throw Error(ErrorCode::kParse, "value '" + v + "' of attribute '" + name + "' missing from declared order");
      std::vector<std::string> ordered;
      for (const auto& v : declared)
        if (std::binary_search(values.begin(), values.end(), v)) ordered.push_back(v);
      values = std::move(ordered);
    }
    for (std::size_t r = 0; r < values.size(); ++r) ranks[m][values[r]] = r;
    if (method == ScaleMethod::kNominal) {
      for (std::size_t r = 0; r < values.size(); ++r) columns.push_back({name + "=" + values[r], m, r, 0});
    } else {
      for (std::size_t r = 0; r < values.size(); ++r) columns.push_back({name + "<=" + values[r], m, r, 1});
      for (std::size_t r = 0; r < values.size(); ++r) columns.push_back({name + ">=" + values[r], m, r, 2});
    }
  }
  std::vector<std::string> names;
  for (const auto& c : columns) names.push_back(c.name);
  Context k(mv.objects(), std::move(names));
  for (std::size_t g = 0; g < mv.num_objects(); ++g)
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto& c = columns[j];
      const auto r = ranks[c.attr].at(mv.value(g, c.attr));
      const bool hit = c.kind == 0 ? r == c.rank : c.kind == 1 ? r <= c.rank : r >= c.rank;
      if (hit) k.set(g, j);
    }
  return k;
}

/// Context of unordered object pairs; {g,h} has m iff m(g) = m(h).
inline Context build_kn(const ManyValuedContext& mv) {
  const auto n = mv.num_objects();
  if (n < 2) throw Error(ErrorCode::kTooFewObjects, "K_N needs at least two objects");
  std::vector<std::string> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = g + 1; h < n; ++h) {
      pairs.push_back("{" + mv.objects()[g] + ";" + mv.objects()[h] + "}");
      idx.emplace_back(g, h);
    }
  Context k(std::move(pairs), mv.attributes());
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t m = 0; m < mv.num_attributes(); ++m)
      if (mv.value(idx[p].first, m) == mv.value(idx[p].second, m)) k.set(p, m);
  return k;
}

inline constexpr std::string_view kSharedToken = "0";

/// Many-valued context whose functional dependencies are exactly the
/// implications of k: an extra object "0" holds the shared token everywhere;
/// object g (1-based index i) holds the shared token where gIm and "i" elsewhere.
inline ManyValuedContext build_kw(const Context& k) {
  std::vector<std::string> objects{"0"};
  for (const auto& o : k.objects()) objects.push_back(o);
  std::vector<std::vector<std::string>> values;
  values.emplace_back(k.num_attributes(), std::string(kSharedToken));
  for (std::size_t g = 0; g < k.num_objects(); ++g) {
    std::vector<std::string> row;
    for (std::size_t m = 0; m < k.num_attributes(); ++m)
      row.push_back(k.incident(g, m) ? std::string(kSharedToken) : std::to_string(g + 1));
    values.push_back(std::move(row));
  }
  return {std::move(objects), k.attributes(), std::move(values)};
}

/// Functional dependency X -> Y over attribute index sets.
inline bool functional_dependency_holds(const ManyValuedContext& mv, const AttributeSet& x, const AttributeSet& y) {
  const auto n = mv.num_objects();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = g + 1; h < n; ++h) {
      bool agree_x = true;
      x.for_each([&](std::size_t m) { agree_x = agree_x && mv.value(g, m) == mv.value(h, m); });
      if (!agree_x) continue;
      bool agree_y = true;
      y.for_each([&](std::size_t m) { agree_y = agree_y && mv.value(g, m) == mv.value(h, m); });
      if (!agree_y) return false;
    }
  return true;
}

}  // namespace fca
