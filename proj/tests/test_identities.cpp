#include "doctest.h"
#include "malt/clone.hpp"
#include "malt/congruence.hpp"
#include "malt/error.hpp"
#include "malt/identities.hpp"
#include "malt/sequence.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace malt;
using oracle::Rel;

namespace {

Rel chain_of(unsigned n, const std::vector<Rel>& factors) {
  Rel out = oracle::identity(n);
  for (const auto& f : factors) out = oracle::compose(out, f);
  return out;
}

// Violation count with the engine's convention: one per failed direction.
std::size_t count(const Rel& lhs, const Rel& rhs, bool equality) {
  return !oracle::subset(lhs, rhs) + (equality && !oracle::subset(rhs, lhs));
}

template <class Fn>
std::size_t over_triples(const std::vector<Rel>& con, Fn fn) {
  std::size_t bad = 0;
  for (const auto& a : con)
    for (const auto& b : con)
      for (const auto& c : con) bad += fn(a, b, c);
  return bad;
}

std::vector<FiniteAlgebra> modular_algebras() {
  return {catalog("l2"), catalog("b2"), catalog("c3"), catalog("z2mal"),
          catalog("z2z2"), direct_power(catalog("l2"), 2),
          direct_power(catalog("z2mal"), 2)};
}

}  // namespace

TEST_CASE("(CD) on c3") {
  const auto c3 = catalog("c3");
  const auto two = check_cd_inclusion(c3, 2);
  REQUIRE(!two.holds());
  const auto& v = two.violations.front();
  CHECK(v.relation_ids == std::vector<std::size_t>{3, 1, 2});
  CHECK(v.pair == Pair{0, 2});
  CHECK(v.direction == "subset");
  CHECK(check_cd_inclusion(c3, 3).holds());
  CHECK(check_cd_inclusion(c3, 3).checked == 64);
}

TEST_CASE("(CD) counts match the set oracle") {
  for (const auto& a : modular_algebras()) {
    const unsigned n = static_cast<unsigned>(a.size());
    const auto con = oracle::congruences(a);
    for (std::size_t k = 0; k <= 4; ++k) {
      const auto bad = over_triples(con, [&](const Rel& al, const Rel& b, const Rel& c) {
        const Rel lhs = oracle::meet(al, oracle::compose(b, c));
        return count(lhs, oracle::chain(n, oracle::meet(al, c), oracle::meet(al, b), k), false);
      });
      CHECK(check_cd_inclusion(a, k).violation_count == bad);
    }
  }
}

TEST_CASE("variety-level (CD) decision follows the alvin level") {
  for (const auto& name : {"l2", "c3", "b2", "z2mal", "trivial1"}) {
    CAPTURE(name);
    const auto a = catalog(name);
    const auto alvin = level(a, SequenceKind::Alvin, {.cap_n = 6});
    const auto clone = generate_clone(a, 3);
    bool previous = false;
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto d = decide_cd_variety(a, n);
      CHECK(d.holds == (alvin.level && *alvin.level <= n));
      CHECK(d.free_size == clone.size());
      if (previous) CHECK(d.holds);
      previous = d.holds;
      if (d.holds) {
        REQUIRE(d.chain.size() == n + 1);
        std::vector<TermOperation> seq;
        for (auto id : d.chain) seq.push_back(clone.operation(id));
        CHECK(check_sequence(a, seq, SequenceKind::Alvin).valid());
      }
    }
  }
}

TEST_CASE("chain lengths") {
  CHECK(corollary6_chain_length(1, 1, 3) == 3);
  CHECK(corollary6_chain_length(2, 3, 2) == 0);
  CHECK(corollary6_chain_length(2, 3, 4) == 5);
  CHECK(corollary6_chain_length(3, 2, 3) == 3);
  CHECK(corollary6_chain_length(4, 2, 3) == 3);
  CHECK(corollary6_chain_length(4, 1, 2) == 1);
  CHECK_THROWS_AS(corollary6_chain_length(5, 1, 2), ArgumentError);
  CHECK_THROWS_AS(corollary6_chain_length(2, 0, 2), ArgumentError);
}

TEST_CASE("corollary 6 clauses match the set oracle and hold") {
  for (const auto& a : modular_algebras()) {
    CAPTURE(a.name());
    const unsigned size = static_cast<unsigned>(a.size());
    const auto gumm = *level(a, SequenceKind::Gumm).level;
    const auto con = oracle::congruences(a);
    const auto tols = oracle::tolerances(a);
    for (std::size_t n = std::max<std::size_t>(gumm, 2); n <= gumm + 1; ++n) {
      for (std::size_t ell = 1; ell <= 3; ++ell) {
        for (int clause = 1; clause <= 4; ++clause) {
          const std::size_t k = corollary6_chain_length(clause, ell, n);
          std::size_t bad = 0;
          if (clause == 4) {
            for (const auto& psi : tols)
              for (const auto& theta : tols)
                bad += count(oracle::meet(psi, oracle::power(size, theta, ell)),
                             oracle::power(size, oracle::meet(psi, theta), k), false);
          } else {
            bad = over_triples(con, [&](const Rel& al, const Rel& b, const Rel& c) {
              const Rel ab = oracle::meet(al, b), ac = oracle::meet(al, c);
              if (clause == 1) {
                return count(oracle::meet(oracle::compose(b, c), oracle::join(ab, ac)),
                             oracle::chain(size, ac, ab, k), false);
              }
              if (clause == 2) {
                const Rel first = oracle::meet(
                    oracle::meet(al, oracle::compose(b, c)), oracle::compose(c, b));
                return count(oracle::meet(al, oracle::chain(size, b, c, ell)),
                             oracle::compose(first, oracle::chain(size, ab, ac, k)), false);
              }
              return count(oracle::meet(oracle::chain(size, b, c, ell), oracle::join(ab, ac)),
                           oracle::chain(size, ac, ab, k), false);
            });
          }
          const auto report = check_corollary6(a, {clause, ell, n}, gumm);
          CHECK(report.violation_count == bad);
          CHECK(bad == 0);
          CHECK(report.tag == "C6." + std::to_string(clause));
        }
      }
    }
  }
}

TEST_CASE("corollary 6 rejects n below the gumm level") {
  CHECK_THROWS_AS(check_corollary6(catalog("c3"), {1, 1, 2}), ArgumentError);
  CHECK_THROWS_AS(check_corollary6(catalog("l2"), {1, 1, 2}), ArgumentError);
  CHECK(check_corollary6(catalog("z2z2"), {1, 1, 2}).checked == 125);
}

TEST_CASE("Tschantz identity and TIP match the oracle") {
  for (const auto& a : modular_algebras()) {
    const unsigned size = static_cast<unsigned>(a.size());
    const auto con = oracle::congruences(a);
    const auto bad = over_triples(con, [&](const Rel& al, const Rel& b, const Rel& c) {
      const Rel lhs = oracle::meet(al, oracle::join(b, c));
      const Rel rhs = oracle::compose(oracle::meet(al, oracle::compose(b, c)),
                                      oracle::join(oracle::meet(al, b), oracle::meet(al, c)));
      return count(lhs, rhs, true);
    });
    const auto t = check_tschantz_identity(a);
    CHECK(t.violation_count == bad);
    CHECK(t.holds());

    const auto tols = oracle::tolerances(a);
    std::size_t tip_bad = 0;
    for (const auto& p : tols)
      for (const auto& q : tols)
        tip_bad += count(oracle::meet(oracle::closure(p), oracle::closure(q)),
                         oracle::closure(oracle::meet(p, q)), true);
    const auto tip = check_tip(a);
    CHECK(tip.violation_count == tip_bad);
    CHECK(tip.holds());
    CHECK(tip.checked == tols.size() * tols.size());
    (void)size;
  }
}

TEST_CASE("corollary 11 matches the oracle") {
  for (const auto& a : {catalog("c3"), catalog("z2z2"), catalog("l2"),
                        direct_power(catalog("l2"), 2)}) {
    CAPTURE(a.name());
    const unsigned size = static_cast<unsigned>(a.size());
    const auto con = all_congruences(a);
    std::vector<Rel> rel;
    for (const auto& r : con.relations()) rel.push_back(oracle::to_set(r));
    const std::size_t l = rel.size();
    for (auto [h, g] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 1}, {2, 2}}) {
      std::size_t bad = 0;
      std::vector<unsigned> ids;
      oracle::each_tuple(l, h * g, [&](const std::vector<unsigned>& t) {
        Rel lhs = oracle::to_set(BinaryRelation::full(size));
        Rel chains = lhs;
        for (std::size_t i = 0; i < h; ++i) {
          Rel join = oracle::identity(size);
          std::vector<Rel> row;
          for (std::size_t j = 0; j < g; ++j) {
            join = oracle::join(join, rel[t[i * g + j]]);
            row.push_back(rel[t[i * g + j]]);
          }
          lhs = oracle::meet(lhs, join);
          chains = oracle::meet(chains, chain_of(size, row));
        }
        Rel sum = oracle::identity(size);
        oracle::each_tuple(g, h, [&](const std::vector<unsigned>& f) {
          Rel m = oracle::to_set(BinaryRelation::full(size));
          for (std::size_t i = 0; i < h; ++i) m = oracle::meet(m, rel[t[i * g + f[i]]]);
          sum = oracle::join(sum, m);
        });
        bad += count(lhs, oracle::compose(chains, sum), true);
      });
      const auto report = check_corollary11_all(a, h, g);
      CHECK(report.violation_count == bad);
      CHECK(report.holds());
      CHECK(report.checked == oracle::int_pow(l, h * g));
    }
    const auto mid = con.size() / 2;
    const std::vector<std::vector<Congruence>> m = {{con[mid], con[con.top()]}, {con[con.top()], con[mid]}};
    CHECK(check_corollary11(a, m).holds());
  }
  CHECK_THROWS_AS(check_corollary11_all(catalog("c3"), 0, 2), ArgumentError);
}

TEST_CASE("theorem 12 patterns and verdicts") {
  const auto patterns = all_patterns_s(3);
  CHECK(patterns.size() == 7);
  CHECK(to_string(patterns[0]) == "a(g.b)");
  CHECK(to_string(patterns[1]) == "a(g.b) o a(g.b)");
  CHECK(to_string(patterns[2]) == "a(g.b) o ag.ab");
  for (const auto& a : {catalog("l2"), catalog("c3"), catalog("b2"),
                        direct_power(catalog("l2"), 2)}) {
    CAPTURE(a.name());
    const unsigned size = static_cast<unsigned>(a.size());
    const auto con = oracle::congruences(a);
    for (const auto& p : patterns) {
      auto side = [&](bool first_split, bool last_split) {
        return over_triples(con, [&](const Rel& al, const Rel& b, const Rel& c) {
          const Rel agb = oracle::meet(al, oracle::compose(c, b));
          const Rel split = oracle::compose(oracle::meet(al, c), oracle::meet(al, b));
          std::vector<Rel> factors{first_split ? split : agb};
          for (std::size_t i = 0; i < p.tags.size(); ++i) {
            const bool last = i + 1 == p.tags.size();
            factors.push_back((last && last_split) || p.tags[i] == PatternTag::AlphaGammaThenAlphaBeta
                                  ? split
                                  : agb);
          }
          return count(oracle::meet(al, oracle::compose(b, c)), chain_of(size, factors), false);
        });
      };
      const auto r = check_theorem12(a, p);
      CHECK(r.s.violation_count == side(false, false));
      const bool applies = p.r() >= 2 && p.tags.back() == PatternTag::AlphaGammaBeta;
      if (r.s.holds()) {
        REQUIRE(r.s1);
        CHECK(r.s1->violation_count == side(true, false));
        CHECK((r.splus.has_value() == applies));
        if (applies) CHECK(r.splus->violation_count == side(true, true));
      } else {
        CHECK(!r.s1);
        CHECK(r.s1_verdict == Verdict::NotEvaluated);
      }
      if (!applies) CHECK(r.splus_verdict == Verdict::NotApplicable);
      CHECK(r.implication_holds());
    }
  }
}
