#include <gtest/gtest.h>

#include <fstream>
#include <numeric>

#include "fca/context.hpp"
#include "fca/io.hpp"
#include "fca/lattice.hpp"
#include "support.hpp"

using namespace fca;

namespace {

Relation load(const std::string& name) {
  std::ifstream in(oracle::data_path(name));
  return io::read_relation(in);
}

// Subsets of an n-set, indexed by bitmask, ordered by inclusion.
Relation powerset_order(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  Relation r(size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if ((a & b) == a) r.add(a, b);
  return r;
}

Relation chain(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r.add(i, j);
  return r;
}

const std::vector<unsigned> kDivisors12{1, 2, 3, 4, 6, 12};

Relation divisibility() {
  Relation r(kDivisors12.size());
  for (std::size_t a = 0; a < kDivisors12.size(); ++a)
    for (std::size_t b = 0; b < kDivisors12.size(); ++b)
      if (kDivisors12[b] % kDivisors12[a] == 0) r.add(a, b);
  return r;
}

// Set partitions of {0,1,2,3} as block labellings in restricted-growth form.
std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int i, int max) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= max + 1; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(max, v));
    }
  };
  a[0] = 0;
  rec(rec, 1, 0);
  return out;
}

// p refines q: elements together in p are together in q.
bool refines(const std::vector<int>& p, const std::vector<int>& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[i] == p[j] && q[i] != q[j]) return false;
  return true;
}

}  // namespace

TEST(LatticeFromPoset, PowersetOfTwo) {
  const auto l = lattice_from_poset(Poset(powerset_order(2)));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      EXPECT_EQ(l.meet(a, b), (a & b));
      EXPECT_EQ(l.join(a, b), (a | b));
    }
  EXPECT_EQ(l.bottom(), 0u);
  EXPECT_EQ(l.top(), 3u);
}

TEST(LatticeFromPoset, NeitherSemilatticeRejected) {
  try {
    lattice_from_poset(Poset(load("no_semilattice.rel")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotALattice);
    EXPECT_NE(std::string(e.what()).find("pair ("), std::string::npos);
  }
}

TEST(LatticeFromPoset, DivisorsOfTwelve) {
  const auto l = lattice_from_poset(Poset(divisibility()));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      EXPECT_EQ(kDivisors12[l.join(a, b)], std::lcm(kDivisors12[a], kDivisors12[b]));
      EXPECT_EQ(kDivisors12[l.meet(a, b)], std::gcd(kDivisors12[a], kDivisors12[b]));
    }
  EXPECT_EQ(kDivisors12[l.join(3, 4)], 12u);  // join(4, 6)
  EXPECT_TRUE(verify_axioms(l).ok());
}

TEST(LatticeFromPoset, PartitionLatticeOfFourSet) {
  const auto parts = set_partitions(4);
  ASSERT_EQ(parts.size(), 15u);
  Relation r(parts.size());
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = 0; b < parts.size(); ++b)
      if (refines(parts[a], parts[b])) r.add(a, b);
  const auto l = lattice_from_poset(Poset(r));
  EXPECT_EQ(l.size(), 15u);
  EXPECT_TRUE(verify_axioms(l).ok());
  EXPECT_FALSE(is_modular(l).holds);
  EXPECT_FALSE(is_distributive(l).holds);
}

TEST(Axioms, PowersetOfThreeCounts) {
  const auto rep = verify_axioms(lattice_from_poset(Poset(powerset_order(3))));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.triple_checks, 512u);
}

TEST(Axioms, CorruptedJoinDetected) {
  auto l = lattice_from_poset(Poset(powerset_order(3)));
  l.set_join(1, 2, 7);
  const auto rep = verify_axioms(l);
  EXPECT_FALSE(rep.ok());
  bool absorption_or_assoc = false;
  for (const auto& v : rep.violations)
    if (v.find("absorption") != std::string::npos || v.find("associativ") != std::string::npos) absorption_or_assoc = true;
  EXPECT_TRUE(absorption_or_assoc);
}

TEST(Axioms, HoldOnAllSmallLattices) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      try {
        const auto l = lattice_from_poset(Poset(r));
        EXPECT_TRUE(verify_axioms(l).ok());
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
              EXPECT_TRUE(l.leq(l.join(x, l.meet(y, z)), l.meet(l.join(x, y), l.join(x, z))));
              EXPECT_TRUE(l.leq(l.join(l.meet(x, y), l.meet(x, z)), l.meet(x, l.join(y, z))));
            }
      } catch (const Error&) {
      }
    }
}

TEST(Irreducibles, ChainPowersetDiamond) {
  const auto c = irreducibles(lattice_from_poset(Poset(chain(4))));
  EXPECT_EQ(c.join_irreducible, (std::vector<std::size_t>{1, 2, 3}));

  const auto p = irreducibles(lattice_from_poset(Poset(powerset_order(3))));
  EXPECT_EQ(p.join_irreducible, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(p.meet_irreducible, (std::vector<std::size_t>{3, 5, 6}));

  const auto d = irreducibles(lattice_from_poset(Poset(load("diamond.rel"))));
  EXPECT_EQ(d.join_irreducible, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(d.meet_irreducible, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Irreducibles, JoinIrreduciblesAreSupremumDense) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      std::optional<FiniteLattice> l;
      try {
        l = lattice_from_poset(Poset(r));
      } catch (const Error&) {
        continue;
      }
      const auto j = irreducibles(*l).join_irreducible;
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t acc = l->bottom();
        for (auto y : j)
          if (l->leq(y, x)) acc = l->join(acc, y);
        EXPECT_EQ(acc, x);
      }
    }
}

TEST(Laws, Pentagon) {
  const auto l = lattice_from_poset(Poset(load("pentagon.rel")));
  const auto m = is_modular(l);
  const auto d = is_distributive(l);
  EXPECT_FALSE(m.holds);
  EXPECT_FALSE(d.holds);
  ASSERT_TRUE(m.sublattice);
  EXPECT_EQ(*m.sublattice, (std::array<std::size_t, 5>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(m.violating_triple);
}

TEST(Laws, Diamond) {
  const auto l = lattice_from_poset(Poset(load("diamond.rel")));
  const auto m = is_modular(l);
  const auto d = is_distributive(l);
  EXPECT_TRUE(m.holds);
  EXPECT_FALSE(d.holds);
  ASSERT_TRUE(d.sublattice);
  EXPECT_EQ(*d.sublattice, (std::array<std::size_t, 5>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(find_pentagon(l));
}

TEST(Laws, PowersetsAreDistributive) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto l = lattice_from_poset(Poset(powerset_order(n)));
    EXPECT_TRUE(is_distributive(l).holds);
    EXPECT_TRUE(is_modular(l).holds);
  }
}

TEST(Laws, IdentityAndSublatticeSearchAgreeUpToSix) {
  std::size_t lattices = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      std::optional<FiniteLattice> l;
      try {
        l = lattice_from_poset(Poset(r));
      } catch (const Error&) {
        continue;
      }
      ++lattices;
      // Both checks throw logic_error if they disagree.
      const auto d = is_distributive(*l);
      const auto m = is_modular(*l);
      if (d.holds) {
        EXPECT_TRUE(m.holds);
      }
    }
  EXPECT_GT(lattices, 0u);
}

TEST(ClosureSystems, PowersetGivesIdentity) {
  std::vector<ElementSet> all;
  for (unsigned m = 0; m < 8; ++m) all.push_back(oracle::set_of<ElementTag>(m, 3));
  const ClosureSystem cs(3, all);
  const auto op = closure_system_to_operator(cs);
  for (const auto& s : all) EXPECT_EQ(op(s), s);
}

TEST(ClosureSystems, CoarsestSystem) {
  const ClosureSystem cs(3, {ElementSet::full(3)});
  const auto op = closure_system_to_operator(cs);
  EXPECT_EQ(op(ElementSet(3)), ElementSet::full(3));
  EXPECT_EQ(op(ElementSet(3, {1})), ElementSet::full(3));
}

TEST(ClosureSystems, RejectsInvalidFamilies) {
  EXPECT_THROW(ClosureSystem(2, {ElementSet(2, {0})}), Error);
  EXPECT_THROW(ClosureSystem(2, {ElementSet::full(2), ElementSet(2, {0}), ElementSet(2, {1})}), Error);
}

TEST(ClosureSystems, IntentsOfExampleContext) {
  std::ifstream in(oracle::data_path("abcd.cxt"));
  const auto k = io::read_burmeister(in);
  const auto t = oracle::table_of(k);
  std::vector<ElementSet> family;
  for (auto b : oracle::intents(t)) family.push_back(oracle::set_of<ElementTag>(b, 4));
  const ClosureSystem cs(4, family);
  const auto op = closure_system_to_operator(cs);
  for (oracle::Mask b = 0; b < 16; ++b)
    EXPECT_EQ(oracle::mask_of(op(oracle::set_of<ElementTag>(b, 4))), oracle::close(t, b));
}

TEST(ClosureSystems, RoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto k = oracle::random_context(rng, 5, 5);
    const SetOperator op = [&](const ElementSet& x) { return k.close(x.retag<AttributeTag>()).retag<ElementTag>(); };
    const auto cs = operator_to_system(op, 5);
    for (const auto& s : cs.family()) EXPECT_EQ(op(s), s);
    for (const auto& a : cs.family())
      for (const auto& b : cs.family()) EXPECT_EQ(cs.close(a & b), a & b);
    const auto back = operator_to_system(closure_system_to_operator(cs), 5);
    EXPECT_EQ(back.family(), cs.family());
    for (unsigned m = 0; m < 32; ++m) {
      const auto x = oracle::set_of<ElementTag>(m, 5);
      EXPECT_EQ(closure_system_to_operator(cs)(x), op(x));
    }
  }
}

TEST(ClosureSystems, RejectsNonClosureOperators) {
  const SetOperator shrink = [](const ElementSet& x) { return ElementSet(x.size()); };
  const SetOperator flip = [](const ElementSet& x) {
    return x.contains(0) ? x : ElementSet::full(x.size());  // not monotone
  };
  try {
    operator_to_system(shrink, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAClosureOperator);
  }
  EXPECT_THROW(operator_to_system(flip, 3), Error);
  EXPECT_THROW(operator_to_system(shrink, 14), Error);
}
