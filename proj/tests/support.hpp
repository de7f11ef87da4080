#pragma once

// Brute-force oracles over plain integer masks. Nothing here calls into the
// library's algorithms, only its containers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/relation.hpp"

namespace oracle {

using Mask = std::uint32_t;

inline std::string data_path(const std::string& name) { return std::string(FCA_DATA_DIR) + "/" + name; }

/// Incidence as an object-major list of attribute masks.
struct Table {
  std::size_t g = 0, m = 0;
  std::vector<Mask> rows;
};

inline Table table_of(const fca::Context& k) {
  Table t{k.num_objects(), k.num_attributes(), {}};
  for (std::size_t i = 0; i < t.g; ++i) {
    Mask r = 0;
    for (std::size_t j = 0; j < t.m; ++j)
      if (k.incident(i, j)) r |= Mask{1} << j;
    t.rows.push_back(r);
  }
  return t;
}

inline Mask full(std::size_t n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Objects having every attribute of b.
inline Mask objects_with(const Table& t, Mask b) {
  Mask out = 0;
  for (std::size_t i = 0; i < t.g; ++i)
    if ((t.rows[i] & b) == b) out |= Mask{1} << i;
  return out;
}

/// Attributes shared by every object of a.
inline Mask attributes_of(const Table& t, Mask a) {
  Mask out = full(t.m);
  for (std::size_t i = 0; i < t.g; ++i)
    if (a >> i & 1) out &= t.rows[i];
  return out;
}

inline Mask close(const Table& t, Mask b) { return attributes_of(t, objects_with(t, b)); }

inline std::vector<Mask> intents(const Table& t) {
  std::vector<Mask> out;
  for (Mask b = 0; b <= full(t.m); ++b)
    if (close(t, b) == b) out.push_back(b);
  return out;
}

/// (extent, intent) pairs of every concept, sorted.
inline std::set<std::pair<Mask, Mask>> concepts(const Table& t) {
  std::set<std::pair<Mask, Mask>> out;
  for (Mask b : intents(t)) out.emplace(objects_with(t, b), b);
  return out;
}

/// Pseudo-intents straight from the recursive definition, smallest first.
inline std::vector<Mask> pseudo_intents(const Table& t) {
  std::vector<Mask> all;
  for (Mask p = 0; p <= full(t.m); ++p) all.push_back(p);
  std::stable_sort(all.begin(), all.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Mask> found;
  for (Mask p : all) {
    if (close(t, p) == p) continue;
    bool ok = true;
    for (Mask q : found)
      if ((q & p) == q && q != p && (close(t, q) & p) != close(t, q)) ok = false;
    if (ok) found.push_back(p);
  }
  std::sort(found.begin(), found.end());
  return found;
}

/// Closure of x under implications (premise, conclusion), by fixpoint.
inline Mask implication_closure(Mask x, const std::vector<std::pair<Mask, Mask>>& l) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [p, c] : l)
      if ((p & x) == p && (c & x) != c) {
        x |= c;
        changed = true;
      }
  }
  return x;
}

inline std::vector<Mask> minimal_transversals(std::size_t n, const std::vector<Mask>& edges) {
  std::vector<Mask> hits;
  for (Mask s = 0; s <= full(n); ++s) {
    bool ok = true;
    for (Mask e : edges)
      if (!(s & e)) ok = false;
    if (ok) hits.push_back(s);
  }
  std::vector<Mask> out;
  for (Mask s : hits) {
    bool minimal = true;
    for (Mask r : hits)
      if (r != s && (r & s) == r) minimal = false;
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Direct definition of a proper premise.
inline bool proper_premise(const Table& t, Mask a) {
  Mask u = a;
  for (std::size_t n = 0; n < t.m; ++n)
    if (a >> n & 1) u |= close(t, a & ~(Mask{1} << n));
  return close(t, a) != u;
}

/// Covering pairs (i, j): family[i] strictly below family[j] with nothing between.
inline std::set<std::pair<std::size_t, std::size_t>> covers(const std::vector<Mask>& family) {
  auto below = [](Mask a, Mask b) { return a != b && (a & b) == a; };
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (!below(family[i], family[j])) continue;
      bool direct = true;
      for (std::size_t k = 0; k < family.size() && direct; ++k)
        if (below(family[i], family[k]) && below(family[k], family[j])) direct = false;
      if (direct) out.emplace(i, j);
    }
  return out;
}

template <class Tag>
Mask mask_of(const fca::BasicBitSet<Tag>& s) {
  Mask out = 0;
  s.for_each([&](std::size_t i) { out |= Mask{1} << i; });
  return out;
}

template <class Tag = fca::AttributeTag>
fca::BasicBitSet<Tag> set_of(Mask x, std::size_t n) {
  fca::BasicBitSet<Tag> s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (x >> i & 1) s.set(i);
  return s;
}

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline fca::Context random_context(std::mt19937& rng, std::size_t g, std::size_t m, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  fca::Context k(numbered("g", g), numbered("m", m));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (coin(rng)) k.set(i, j);
  return k;
}

inline fca::Context context_from_rows(const std::vector<std::string>& rows, const std::vector<std::string>& attrs) {
  fca::Context k(numbered("g", rows.size()), attrs);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < attrs.size(); ++j)
      if (rows[i][j] == 'X') k.set(i, j);
  return k;
}

inline fca::Context contranominal(std::size_t n) {
  fca::Context k(numbered("g", n), numbered("m", n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) k.set(i, j);
  return k;
}

/// Generalised exponential-basis family: 3n objects over m0..m2n.
inline fca::Context kexp(std::size_t n) {
  std::vector<std::string> attrs = numbered("m", 2 * n + 1);
  std::vector<std::string> objs;
  for (std::size_t i = 1; i <= 3 * n; ++i) objs.push_back("g" + std::to_string(i));
  fca::Context k(objs, attrs);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= 2 * n; ++j)
      if (j != i && j != n + i) k.set(i - 1, j);
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    k.set(n + i - 1, 0);
    for (std::size_t j = 1; j <= 2 * n; ++j)
      if (j != i) k.set(n + i - 1, j);
  }
  return k;
}

/// Every partial order on n elements with 0 <= ... consistent with index order
/// (i <= j only if i < j), which covers all posets up to isomorphism.
inline std::vector<fca::Relation> all_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<fca::Relation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (bits >> s & 1) r[slots[s].first][slots[s].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        for (std::size_t c = 0; c < n && transitive; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) transitive = false;
    if (!transitive) continue;
    fca::Relation rel(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (r[a][b]) rel.add(a, b);
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace oracle
