// One line per acceptance criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "fca/concepts.hpp"
#include "fca/context.hpp"
#include "fca/exploration.hpp"
#include "fca/implications.hpp"
#include "fca/io.hpp"
#include "fca/lattice.hpp"
#include "support.hpp"

using namespace fca;
using oracle::Mask;

namespace {

constexpr double kGoldenSeconds = 1.0;
constexpr double kExtendedSeconds = 1.0;
constexpr double kExpSeconds = 30.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kDelayTolerance = 2.0;
constexpr int kOracleContexts = 200;
constexpr int kEngineInstances = 1000;
constexpr int kHiddenContexts = 50;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(const char* name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs > limit) o.require(false, "took " + std::to_string(secs) + " s");
  if (!o.ok) ++failures;
  std::printf("%s  %-28s %7.3f s%s%s\n", o.ok ? "PASS" : "FAIL", name, secs, o.ok ? "" : "  ", o.detail.c_str());
}

Context load(const std::string& name) { return io::load_context(oracle::data_path(name)); }

std::string letters(const Context& k, const AttributeSet& s) {
  std::string out;
  for (const auto& n : k.names(s)) out += n;
  return out;
}

std::set<std::string> rendered(const Context& k, const ImplicationSet& l) {
  std::set<std::string> out;
  for (const auto& i : l) out.insert(letters(k, i.premise) + "->" + letters(k, i.conclusion));
  return out;
}

std::string joined(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return out;
}

std::vector<Context> random_contexts(std::uint32_t seed, int count, std::size_t max_g, std::size_t max_m) {
  std::mt19937 rng(seed);
  std::vector<Context> out;
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> dg(0, max_g), dm(0, max_m);
    std::uniform_real_distribution<double> dens(0.2, 0.9);
    out.push_back(oracle::random_context(rng, dg(rng), dm(rng), dens(rng)));
  }
  return out;
}

std::set<std::pair<Mask, Mask>> concept_masks(const std::vector<Concept>& cs) {
  std::set<std::pair<Mask, Mask>> out;
  for (const auto& c : cs) out.emplace(oracle::mask_of(c.extent), oracle::mask_of(c.intent));
  return out;
}

Mask restrict(Mask x, const std::vector<std::size_t>& kept) {
  Mask out = 0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (x >> kept[i] & 1) out |= Mask{1} << i;
  return out;
}

bool isomorphic_by_restriction(const Context& before, const Context& after, const std::vector<std::size_t>& ko,
                               const std::vector<std::size_t>& ka) {
  const auto a = oracle::concepts(oracle::table_of(before));
  const auto b = oracle::concepts(oracle::table_of(after));
  if (a.size() != b.size()) return false;
  std::vector<std::pair<Mask, Mask>> src(a.begin(), a.end()), img;
  for (auto [e, i] : src) {
    std::pair<Mask, Mask> m{restrict(e, ko), restrict(i, ka)};
    if (!b.count(m)) return false;
    img.push_back(m);
  }
  if (std::set<std::pair<Mask, Mask>>(img.begin(), img.end()).size() != img.size()) return false;
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = 0; y < src.size(); ++y)
      if (((src[x].first & src[y].first) == src[x].first) != ((img[x].first & img[y].first) == img[x].first))
        return false;
  return true;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool identity_holds(const FiniteLattice& l, bool modular_only) {
  const auto n = l.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (modular_only && !l.leq(x, z)) continue;
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), l.join(x, z))) return false;
      }
  return true;
}

Relation load_relation(const std::string& name) {
  auto in = io::open_input(oracle::data_path(name));
  return io::read_relation(in);
}

}  // namespace

int main() {
  report("golden-example", kGoldenSeconds, [] {
    Outcome o;
    const auto k = load("abcd.cxt");
    const auto cs = enumerate_concepts(k);
    o.require(cs.size() == 9 && concept_masks(cs) == oracle::concepts(oracle::table_of(k)), "concepts differ from oracle");
    std::set<std::string> dg;
    for (const auto& i : duquenne_guigues(k)) dg.insert(letters(k, i.premise));
    const std::set<std::string> expected_premises{"b", "ab", "cd"};
    o.require(dg == expected_premises, "DG premises {" + joined(dg) + "}, expected {" + joined(expected_premises) +
                                   "}; {a,b} contains pseudo-intent {b} but not {b}''={b,c}");
    const auto pp = rendered(k, proper_premises(k));
    o.require(pp == std::set<std::string>{"b->bc", "ab->abcd", "cd->bcd"}, "proper premises " + joined(pp));
    std::set<std::string> gens;
    for (const auto& intent : all_intents(k))
      for (const auto& g : minimal_generators(k, intent))
        if (g.nontrivial) gens.insert(letters(k, g.generator));
    o.require(gens == std::set<std::string>{"b", "bd", "cd", "ab", "acd"}, "generators " + joined(gens));
    return o;
  });

  report("extended-context", kExtendedSeconds, [] {
    Outcome o;
    const auto k = load("abcde.cxt");
    const auto be = k.attribute_set({"b", "e"});
    o.require(is_proper_premise(k, be), "{b,e} is not a proper premise");
    bool listed = false;
    for (const auto& i : proper_premises(k)) listed |= i.premise == be;
    o.require(listed, "{b,e} missing from the direct basis");
    o.require(!is_pseudo_intent(k, be), "{b,e} reported as pseudo-intent");
    o.require(proper_premises(k).size() > duquenne_guigues(k).size(), "direct basis not larger than DG basis");
    return o;
  });

  report("exponential-basis", kExpSeconds, [] {
    Outcome o;
    const auto k3 = load("exp_basis3.cxt");
    std::set<std::string> expected, got;
    for (auto a : {"m1", "m4"})
      for (auto b : {"m2", "m5"})
        for (auto c : {"m3", "m6"}) expected.insert(k3.attribute_set({a, b, c}).to_string());
    for (const auto& i : duquenne_guigues(k3)) got.insert(i.premise.to_string());
    o.require(got == expected, "K_exp,3 pseudo-intents differ from the listed family");
    for (std::size_t n = 4; n <= 8; ++n) {
      const auto size = duquenne_guigues(oracle::kexp(n), BasisVariant::kOptimized).size();
      o.require(size == std::size_t{1} << n, "n=" + std::to_string(n) + " gave " + std::to_string(size));
    }
    return o;
  });

  report("oracle-equivalence", kOracleSeconds, [] {
    Outcome o;
    int i = 0;
    for (const auto& k : random_contexts(2718, kOracleContexts, 6, 6)) {
      const auto tag = " (context " + std::to_string(i++) + ")";
      const auto t = oracle::table_of(k);
      const auto l = build_lattice(k);
      o.require(concept_masks(l.concepts) == oracle::concepts(t), "CbO differs" + tag);
      std::vector<Mask> ext;
      for (const auto& c : l.concepts) ext.push_back(oracle::mask_of(c.extent));
      o.require(std::set<std::pair<std::size_t, std::size_t>>(l.covers.begin(), l.covers.end()) == oracle::covers(ext),
                "covers differ" + tag);
      const auto dg = duquenne_guigues(k);
      const auto direct = proper_premises(k);
      const LinClosureIndex idx(dg);
      for (Mask x = 0; x <= oracle::full(t.m); ++x) {
        const auto xs = oracle::set_of(x, t.m);
        o.require(oracle::mask_of(idx.close(xs)) == oracle::close(t, x), "DG closure differs" + tag);
        o.require(oracle::mask_of(apply_once(xs, direct)) == oracle::close(t, x), "direct basis not one-pass" + tag);
      }
    }
    return o;
  });

  report("closure-engines", 0, [] {
    Outcome o;
    std::mt19937 rng(1234);
    for (int t = 0; t < kEngineInstances; ++t) {
      const std::size_t m = 1 + t % 12;
      std::uniform_int_distribution<Mask> pick(0, oracle::full(m));
      ImplicationSet l(m);
      for (std::size_t i = 0, n = rng() % 16; i < n; ++i) {
        const Mask p = pick(rng) & pick(rng);
        l.add({oracle::set_of(p, m), oracle::set_of(p | pick(rng), m)});
      }
      const auto x = oracle::set_of(pick(rng), m);
      o.require(simp_closure(x, l) == lin_closure(x, l), "instance " + std::to_string(t) + " differs");
    }
    return o;
  });

  report("contranominal-delay", 0, [] {
    Outcome o;
    const auto n5 = measure_delay(oracle::contranominal(5));
    o.require(n5.concept_count == 32 && enumerate_concepts(oracle::contranominal(5)).size() == 32,
              "contranominal 5 gave " + std::to_string(n5.concept_count) + " concepts");
    const auto n4 = measure_delay(oracle::contranominal(4));
    const double c = double(n4.max_delay) / (4.0 * 4.0 * 4.0);
    const double envelope = kDelayTolerance * c * 5.0 * 5.0 * 5.0;
    o.require(double(n5.max_delay) <= envelope,
              "max delay " + std::to_string(n5.max_delay) + " above envelope " + std::to_string(envelope));
    return o;
  });

  report("clarify-reduce-invariance", 0, [] {
    Outcome o;
    for (const auto* name : {"abcd.cxt", "abcde.cxt", "twin_rows.cxt", "exp_basis3.cxt", "abcd.csv"}) {
      const auto k = load(name);
      const auto c = clarify(k);
      o.require(isomorphic_by_restriction(k, c.context, c.kept_objects, c.kept_attributes), std::string("clarify ") + name);
      const auto ra = reduce_attributes(k);
      o.require(isomorphic_by_restriction(k, ra.context, iota(k.num_objects()), ra.kept), std::string("reduce ") + name);
      const auto ro = reduce_objects(k);
      o.require(isomorphic_by_restriction(k, ro.context, ro.kept, iota(k.num_attributes())),
                std::string("reduce objects ") + name);
    }
    return o;
  });

  report("lattice-laws", 0, [] {
    Outcome o;
    const auto pentagon = lattice_from_poset(Poset(load_relation("pentagon.rel")));
    const auto diamond = lattice_from_poset(Poset(load_relation("diamond.rel")));
    o.require(!is_modular(pentagon).holds, "pentagon is modular");
    o.require(!is_distributive(diamond).holds && is_modular(diamond).holds, "diamond misclassified");
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 6; ++n)
      for (const auto& r : oracle::all_posets(n)) {
        std::optional<FiniteLattice> l;
        try {
          l = lattice_from_poset(Poset(r));
        } catch (const Error&) {
          continue;
        }
        ++checked;
        const bool pent = find_pentagon(*l).has_value(), diam = find_diamond(*l).has_value();
        o.require(identity_holds(*l, false) == (!pent && !diam), "distributivity disagrees");
        o.require(identity_holds(*l, true) == !pent, "modularity disagrees");
      }
    o.require(checked > 0, "no lattices checked");
    return o;
  });

  report("functional-dependencies", 0, [] {
    Outcome o;
    const auto k = load("abcd.cxt");
    const auto t = oracle::table_of(k);
    const auto kw = build_kw(k);
    const auto broken = kw.without_object(0);
    const auto m = k.num_attributes();
    std::size_t discrepancies = 0;
    for (Mask x = 0; x <= oracle::full(m); ++x)
      for (Mask y = 0; y <= oracle::full(m); ++y) {
        const auto xs = oracle::set_of(x, m), ys = oracle::set_of(y, m);
        const bool valid = is_valid(k, {xs, ys});
        o.require(functional_dependency_holds(kw, xs, ys) == valid, "bridge fails");
        discrepancies += functional_dependency_holds(broken, xs, ys) != valid;
      }
    o.require(discrepancies > 0, "no discrepancy without row 0");
    return o;
  });

  report("exploration-soundness", 0, [] {
    Outcome o;
    std::mt19937 rng(31337);
    for (int t = 0; t < kHiddenContexts; ++t) {
      const std::size_t m = 1 + rng() % 6, g = rng() % 8;
      const auto hidden = oracle::random_context(rng, g, m, 0.5);
      const auto ht = oracle::table_of(hidden);
      ExplorationSession s(hidden.attributes());
      for (int guard = 0; !s.finished() && guard < 10000; ++guard) {
        const auto p = *s.pending();
        if (is_valid(hidden, p)) {
          s.accept();
          continue;
        }
        for (std::size_t i = 0; i < hidden.num_objects(); ++i)
          if (p.premise.is_subset_of(hidden.intent_of(i)) && !p.conclusion.is_subset_of(hidden.intent_of(i))) {
            s.reject(hidden.objects()[i], hidden.intent_of(i));
            break;
          }
      }
      const auto tag = " (hidden " + std::to_string(t) + ")";
      o.require(s.finished(), "did not terminate" + tag);
      std::vector<Mask> premises;
      for (const auto& i : s.accepted()) premises.push_back(oracle::mask_of(i.premise));
      std::sort(premises.begin(), premises.end());
      o.require(premises == oracle::pseudo_intents(ht), "accepted set is not the DG basis" + tag);
      const auto et = oracle::table_of(s.examples());
      for (Mask x = 0; x <= oracle::full(m); ++x)
        o.require(oracle::close(et, x) == oracle::close(ht, x), "examples close differently" + tag);
    }
    return o;
  });

  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
