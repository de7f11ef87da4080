#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/error.hpp"
#include "fca/next_closure.hpp"
#include "fca/relation.hpp"

namespace fca {

/// Finite lattice with explicit meet/join tables over the elements of a poset.
class FiniteLattice {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  FiniteLattice(Poset poset, Table meet, Table join, std::size_t bottom, std::size_t top)
      : poset_(std::move(poset)), meet_(std::move(meet)), join_(std::move(join)), bottom_(bottom), top_(top) {}

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  std::size_t meet(std::size_t x, std::size_t y) const { return meet_[x][y]; }
  std::size_t join(std::size_t x, std::size_t y) const { return join_[x][y]; }
  bool leq(std::size_t x, std::size_t y) const { return poset_.leq(x, y); }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  const Table& meet_table() const { return meet_; }
  const Table& join_table() const { return join_; }

  /// Overwrites one join entry; lets tests inject faults.
  void set_join(std::size_t x, std::size_t y, std::size_t v) { join_[x][y] = v; }
  void set_meet(std::size_t x, std::size_t y, std::size_t v) { meet_[x][y] = v; }

 private:
  Poset poset_;
  Table meet_;
  Table join_;
  std::size_t bottom_;
  std::size_t top_;
};

namespace detail {

// Unique greatest element of `candidates` w.r.t. the order, if any.
inline std::optional<std::size_t> greatest(const Poset& p, const ElementSet& candidates) {
  for (auto c = candidates.first(); c != npos; c = candidates.next(c + 1)) {
    bool above_all = true;
    candidates.for_each([&](std::size_t d) {
      if (!p.leq(d, c)) above_all = false;
    });
    if (above_all) return c;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> least(const Poset& p, const ElementSet& candidates) {
  for (auto c = candidates.first(); c != npos; c = candidates.next(c + 1)) {
    bool below_all = true;
    candidates.for_each([&](std::size_t d) {
      if (!p.leq(c, d)) below_all = false;
    });
    if (below_all) return c;
  }
  return std::nullopt;
}

}  // namespace detail

/// Builds meet/join tables by searching greatest lower and least upper bounds.
inline FiniteLattice lattice_from_poset(const Poset& p) {
  const auto n = p.size();
  if (n == 0) throw Error(ErrorCode::kNotALattice, "empty poset has no top or bottom");
  const Relation& r = p.relation();
  FiniteLattice::Table meet(n, std::vector<std::size_t>(n)), join(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto lower = r.column(x) & r.column(y);
      auto upper = r.row(x) & r.row(y);
      auto inf = detail::greatest(p, lower);
      auto sup = detail::least(p, upper);
      if (!inf || !sup) {
        throw Error(ErrorCode::kNotALattice, "pair (" + r.label(x) + ", " + r.label(y) + ") has no " +
                                                 (inf ? "supremum" : "infimum"));
      }
      meet[x][y] = *inf;
      join[x][y] = *sup;
    }
  }
  auto bottom = detail::least(p, ElementSet::full(n));
  auto top = detail::greatest(p, ElementSet::full(n));
  return FiniteLattice(p, std::move(meet), std::move(join), *bottom, *top);
}

struct AxiomReport {
  std::size_t pair_checks = 0;
  std::size_t triple_checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Exhaustively checks idempotency, commutativity, associativity, absorption
/// and agreement of the tables with the order.
inline AxiomReport verify_axioms(const FiniteLattice& l) {
  AxiomReport rep;
  const auto n = l.size();
  auto fail = [&](std::string what, std::initializer_list<std::size_t> at) {
    what += " at (";
    bool first = true;
    for (auto i : at) {
      what += (first ? "" : ", ") + std::to_string(i);
      first = false;
    }
    rep.violations.push_back(what + ")");
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (l.join(x, x) != x) fail("join idempotency", {x});
    if (l.meet(x, x) != x) fail("meet idempotency", {x});
    for (std::size_t y = 0; y < n; ++y) {
      ++rep.pair_checks;
      if (l.join(x, y) != l.join(y, x)) fail("join commutativity", {x, y});
      if (l.meet(x, y) != l.meet(y, x)) fail("meet commutativity", {x, y});
      if (l.join(x, l.meet(x, y)) != x) fail("absorption x v (x ^ y) = x", {x, y});
      if (l.meet(x, l.join(x, y)) != x) fail("absorption x ^ (x v y) = x", {x, y});
      const bool le = l.leq(x, y);
      if (le != (l.meet(x, y) == x) || le != (l.join(x, y) == y)) fail("order consistency", {x, y});
      for (std::size_t z = 0; z < n; ++z) {
        ++rep.triple_checks;
        if (l.join(x, l.join(y, z)) != l.join(l.join(x, y), z)) fail("join associativity", {x, y, z});
        if (l.meet(x, l.meet(y, z)) != l.meet(l.meet(x, y), z)) fail("meet associativity", {x, y, z});
      }
    }
  }
  return rep;
}

struct Irreducibles {
  std::vector<std::size_t> join_irreducible;
  std::vector<std::size_t> meet_irreducible;
};

/// Elements with exactly one lower cover (join) or one upper cover (meet).
inline Irreducibles irreducibles(const FiniteLattice& l) {
  const Relation cover = covering_relation(l.poset());
  Irreducibles out;
  for (std::size_t x = 0; x < l.size(); ++x) {
    if (x != l.bottom() && cover.column(x).count() == 1) out.join_irreducible.push_back(x);
    if (x != l.top() && cover.row(x).count() == 1) out.meet_irreducible.push_back(x);
  }
  return out;
}

/// Outcome of a distributivity or modularity test. `violating_triple` comes
/// from the identity check, `sublattice` from the pentagon/diamond search.
struct LawCheck {
  bool holds = true;
  std::optional<std::array<std::size_t, 3>> violating_triple;
  std::optional<std::array<std::size_t, 5>> sublattice;
};

namespace detail {

inline std::array<std::size_t, 5> sorted5(std::array<std::size_t, 5> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace detail

/// Sublattice {o, a, b, c, i} with o < a < b < i and c incomparable to a, b.
inline std::optional<std::array<std::size_t, 5>> find_pentagon(const FiniteLattice& l) {
  const auto n = l.size();
  const Poset& p = l.poset();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.less(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (p.leq(c, b) || p.leq(b, c) || p.leq(a, c) || p.leq(c, a)) continue;
        if (l.meet(a, c) == l.meet(b, c) && l.join(a, c) == l.join(b, c))
          return detail::sorted5({l.meet(a, c), a, b, c, l.join(a, c)});
      }
    }
  return std::nullopt;
}

/// Sublattice of three pairwise incomparable atoms sharing meet and join.
inline std::optional<std::array<std::size_t, 5>> find_diamond(const FiniteLattice& l) {
  const auto n = l.size();
  const Poset& p = l.poset();
  auto incomparable = [&](std::size_t x, std::size_t y) { return !p.leq(x, y) && !p.leq(y, x); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!incomparable(x, y)) continue;
      const auto o = l.meet(x, y), i = l.join(x, y);
      for (std::size_t z = y + 1; z < n; ++z) {
        if (!incomparable(x, z) || !incomparable(y, z)) continue;
        if (l.meet(x, z) == o && l.meet(y, z) == o && l.join(x, z) == i && l.join(y, z) == i)
          return detail::sorted5({o, x, y, z, i});
      }
    }
  return std::nullopt;
}

namespace detail {

inline void check_agreement(const LawCheck& c, const char* law) {
  if (c.holds != !c.sublattice.has_value() || c.holds != !c.violating_triple.has_value())
    throw std::logic_error(std::string(law) + ": identity check and sublattice search disagree");
}

}  // namespace detail

inline LawCheck is_distributive(const FiniteLattice& l) {
  LawCheck c;
  const auto n = l.size();
  for (std::size_t x = 0; x < n && !c.violating_triple; ++x)
    for (std::size_t y = 0; y < n && !c.violating_triple; ++y)
      for (std::size_t z = 0; z < n && !c.violating_triple; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) c.violating_triple = {x, y, z};
  c.sublattice = find_pentagon(l);
  if (!c.sublattice) c.sublattice = find_diamond(l);
  c.holds = !c.violating_triple;
  detail::check_agreement(c, "distributivity");
  return c;
}

inline LawCheck is_modular(const FiniteLattice& l) {
  LawCheck c;
  const auto n = l.size();
  for (std::size_t x = 0; x < n && !c.violating_triple; ++x)
    for (std::size_t z = 0; z < n && !c.violating_triple; ++z) {
      if (!l.leq(x, z)) continue;
      for (std::size_t y = 0; y < n && !c.violating_triple; ++y)
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) c.violating_triple = {x, y, z};
    }
  c.sublattice = find_pentagon(l);
  c.holds = !c.violating_triple;
  detail::check_agreement(c, "modularity");
  return c;
}

// ---------------------------------------------------------------------------
// Closure systems and closure operators

using SetOperator = std::function<ElementSet(const ElementSet&)>;

/// Intersection-closed family of subsets of 0..n-1 containing the full set.
class ClosureSystem {
 public:
  ClosureSystem(std::size_t n, std::vector<ElementSet> family) : n_(n), family_(std::move(family)) {
    std::sort(family_.begin(), family_.end(), [](const auto& a, const auto& b) { return lectic_less(a, b); });
    family_.erase(std::unique(family_.begin(), family_.end()), family_.end());
    const auto full = ElementSet::full(n);
    if (std::find(family_.begin(), family_.end(), full) == family_.end())
      throw Error(ErrorCode::kNotAClosureSystem, "family does not contain the ground set");
    for (std::size_t i = 0; i < family_.size(); ++i)
      for (std::size_t j = i + 1; j < family_.size(); ++j) {
        auto m = family_[i] & family_[j];
        if (!std::binary_search(family_.begin(), family_.end(), m,
                                [](const auto& a, const auto& b) { return lectic_less(a, b); }))
          throw Error(ErrorCode::kNotAClosureSystem,
                      "intersection of " + family_[i].to_string() + " and " + family_[j].to_string() + " missing");
      }
  }

  std::size_t ground_size() const { return n_; }
  /// Closed sets in lectic order.
  const std::vector<ElementSet>& family() const { return family_; }

  /// Intersection of all members containing `a`.
  ElementSet close(const ElementSet& a) const {
    auto acc = ElementSet::full(n_);
    for (const auto& x : family_)
      if (a.is_subset_of(x)) acc &= x;
    return acc;
  }

 private:
  std::size_t n_;
  std::vector<ElementSet> family_;
};

inline SetOperator closure_system_to_operator(const ClosureSystem& cs) {
  return [cs](const ElementSet& a) { return cs.close(a); };
}

inline constexpr std::size_t kExhaustiveOperatorCheck = 12;

/// Verifies the closure laws (exhaustively up to 12 elements, otherwise on
/// `samples` seeded random pairs) and collects the closed sets.
inline ClosureSystem operator_to_system(const SetOperator& op, std::size_t n, std::size_t samples = 4096,
                                        std::uint64_t seed = 1) {
  auto check = [&](const ElementSet& x) {
    auto cx = op(x);
    if (!x.is_subset_of(cx))
      throw Error(ErrorCode::kNotAClosureOperator, "extensivity fails at " + x.to_string());
    if (op(cx) != cx) throw Error(ErrorCode::kNotAClosureOperator, "idempotence fails at " + x.to_string());
    return cx;
  };
  auto check_monotone = [&](const ElementSet& x, const ElementSet& y) {
    if (x.is_subset_of(y) && !op(x).is_subset_of(op(y)))
      throw Error(ErrorCode::kNotAClosureOperator,
                  "monotonicity fails at " + x.to_string() + " <= " + y.to_string());
  };
  if (n <= kExhaustiveOperatorCheck) {
    const std::size_t total = std::size_t{1} << n;
    std::vector<ElementSet> images;
    images.reserve(total);
    auto subset = [&](std::size_t bits) {
      ElementSet s(n);
      for (std::size_t i = 0; i < n; ++i)
        if (bits >> i & 1U) s.set(i);
      return s;
    };
    for (std::size_t b = 0; b < total; ++b) images.push_back(check(subset(b)));
    // Monotonicity reduces to single-element extensions.
    for (std::size_t b = 0; b < total; ++b)
      for (std::size_t i = 0; i < n; ++i)
        if (!(b >> i & 1U) && !images[b].is_subset_of(images[b | (std::size_t{1} << i)]))
          throw Error(ErrorCode::kNotAClosureOperator, "monotonicity fails at " + subset(b).to_string());
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      ElementSet x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        bool in_x = rng() & 1U;
        x.assign(i, in_x);
        y.assign(i, in_x || (rng() & 1U));
      }
      check(x);
      check(y);
      check_monotone(x, y);
    }
  }
  return ClosureSystem(n, all_closed_sets<ElementTag>(n, op));
}

}  // namespace fca
