#include <random>

#include "doctest.h"
#include "malt/congruence.hpp"
#include "malt/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace malt;
using oracle::Rel;

namespace {

std::set<Rel> as_sets(const CongruenceLattice& con) {
  std::set<Rel> out;
  for (const auto& r : con.relations()) out.insert(oracle::to_set(r));
  return out;
}

std::vector<FiniteAlgebra> test_algebras() {
  std::vector<FiniteAlgebra> out;
  for (const auto& name : catalog_names()) out.push_back(catalog(name));
  out.push_back(direct_power(catalog("l2"), 2));
  std::mt19937 rng(29);
  for (int i = 0; i < 25; ++i) {
    const std::size_t size = 2 + rng() % 4;
    std::vector<std::size_t> arities;
    const std::size_t ops = 1 + rng() % 2;
    for (std::size_t j = 0; j < ops; ++j) arities.push_back(1 + rng() % 2);
    out.push_back(oracle::random_algebra(rng, size, arities));
  }
  return out;
}

}  // namespace

TEST_CASE("congruences agree with partition filtering") {
  for (const auto& a : test_algebras()) {
    CAPTURE(a.name());
    const auto con = all_congruences(a);
    const auto expected = oracle::congruences(a);
    CHECK(con.size() == expected.size());
    CHECK(as_sets(con) == std::set<Rel>(expected.begin(), expected.end()));
  }
}

TEST_CASE("lattice order, meet and join are those of relations") {
  for (const auto& a : test_algebras()) {
    const auto con = all_congruences(a);
    CHECK(con[con.bottom()] == Congruence::identity(a.size()));
    CHECK(con[con.top()] == Congruence::full(a.size()));
    for (std::size_t i = 0; i < con.size(); ++i) {
      for (std::size_t j = 0; j < con.size(); ++j) {
        const auto ri = oracle::to_set(con.relations()[i]);
        const auto rj = oracle::to_set(con.relations()[j]);
        CHECK(oracle::to_set(con.relations()[con.meet(i, j)]) == oracle::meet(ri, rj));
        CHECK(oracle::to_set(con.relations()[con.join(i, j)]) == oracle::join(ri, rj));
        CHECK(con.leq(i, j) == oracle::subset(ri, rj));
      }
    }
  }
}

TEST_CASE("generated congruences match a fixpoint closure") {
  std::mt19937 rng(31);
  for (const auto& a : test_algebras()) {
    const unsigned n = static_cast<unsigned>(a.size());
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Pair> pairs;
      for (int i = 0; i < 2; ++i) pairs.push_back({rng() % n, rng() % n});
      // Least compatible equivalence containing the pairs.
      Rel r = oracle::identity(n);
      for (auto p : pairs) r.insert(p);
      for (;;) {
        Rel next = oracle::compatible_closure(a, oracle::closure(oracle::join(r, oracle::converse(r))));
        if (next == r) break;
        r = next;
      }
      CHECK(oracle::to_set(congruence_generated(a, pairs).relation()) == r);
    }
  }
}

TEST_CASE("tolerances agree with the reflexive symmetric filter") {
  for (const auto& a : test_algebras()) {
    if (a.size() > 5) continue;
    const auto tols = all_tolerances(a);
    const auto expected = oracle::tolerances(a);
    std::set<Rel> got;
    for (const auto& t : tols) got.insert(oracle::to_set(t.relation()));
    CHECK(got == std::set<Rel>(expected.begin(), expected.end()));
    CHECK(tols.size() == expected.size());
  }
}

TEST_CASE("c3 tolerance generated by adjacent pairs") {
  const auto c3 = catalog("c3");
  const Pair seeds[] = {{0, 1}, {1, 2}};
  const auto t = tolerance_generated(c3, seeds);
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      CHECK(t.relation().contains(a, b) == (a > b ? a - b <= 1 : b - a <= 1));
  CHECK(compose(t.relation(), t.relation()) == BinaryRelation::full(3));
}

TEST_CASE("compatible closure matches the naive fixpoint") {
  std::mt19937 rng(37);
  for (const auto& a : test_algebras()) {
    const unsigned n = static_cast<unsigned>(a.size());
    for (int trial = 0; trial < 4; ++trial) {
      const Rel r = oracle::random_relation(rng, n, 0.15);
      const auto closed = compatible_closure(a, oracle::from_set(n, r));
      CHECK(oracle::to_set(closed) == oracle::compatible_closure(a, r));
      CHECK(is_compatible(a, closed));
      CHECK(is_compatible(a, oracle::from_set(n, r)) == oracle::compatible(a, r));
    }
  }
  const Pair p[] = {{0, 1}};
  CHECK(compatible_closure(catalog("l2"), BinaryRelation::from_pairs(2, p)) ==
        BinaryRelation::from_pairs(2, p));
  auto r = BinaryRelation::identity(2);
  r.insert(0, 1);
  CHECK(compatible_closure(catalog("z2mal"), r) == BinaryRelation::full(2));
}

TEST_CASE("reflexive compatible relations from two seeds") {
  const auto c3 = catalog("c3");
  const auto rels = reflexive_compatible_relations(c3);
  std::set<Rel> expected;
  std::vector<Pair> off;
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 3; ++b)
      if (a != b) off.push_back({a, b});
  expected.insert(oracle::identity(3));
  for (std::size_t i = 0; i < off.size(); ++i) {
    for (std::size_t j = i; j < off.size(); ++j) {
      Rel r = oracle::identity(3);
      r.insert(off[i]);
      r.insert(off[j]);
      expected.insert(oracle::compatible_closure(c3, r));
    }
  }
  std::set<Rel> got;
  for (const auto& r : rels) {
    CHECK(r.is_reflexive());
    CHECK(is_compatible(c3, r));
    got.insert(oracle::to_set(r));
  }
  CHECK(got == expected);
}

TEST_CASE("modularity and distributivity of catalog lattices") {
  CHECK(is_distributive(all_congruences(catalog("c3"))));
  CHECK(is_distributive(all_congruences(catalog("l2"))));
  const auto klein = all_congruences(catalog("z2z2"));
  CHECK(klein.size() == 5);
  CHECK(is_modular(klein));
  const auto law = check_distributive(klein);
  CHECK(!law.holds);
  REQUIRE(law.witness);
  const auto [x, y, z] = *law.witness;
  CHECK(klein.meet(x, klein.join(y, z)) !=
        klein.join(klein.meet(x, y), klein.meet(x, z)));
}

TEST_CASE("congruence notation and validation") {
  const auto c3 = catalog("c3");
  const Pair p[] = {{0, 1}};
  const auto c = congruence_generated(c3, p);
  CHECK(to_string(c) == "{{0,1},{2}}");
  CHECK(c.block_count() == 2);
  CHECK(c.pair_count() == 5);
  const Element labels[] = {5, 5, 2};
  CHECK(Congruence::from_labels(labels) == c);
  CHECK(Congruence::from_relation(c3, c.relation()) == c);
  auto bad = BinaryRelation::identity(3);
  bad.insert(0, 2);
  bad.insert(2, 0);
  CHECK_THROWS_AS(Congruence::from_relation(c3, bad), ValidationError);
  CHECK_THROWS_AS(Tolerance(c3, bad), ValidationError);
  CHECK_THROWS_AS(all_congruences(catalog("z2z2"), 3), BudgetExceeded);
}
