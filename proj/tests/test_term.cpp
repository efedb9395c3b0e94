#include "doctest.h"
#include "malt/error.hpp"
#include "malt/term.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace malt;

TEST_CASE("projections") {
  const auto p = TermOperation::projection(3, 3, 1);
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y)
      for (Element z = 0; z < 3; ++z) CHECK(p.at(x, y, z) == y);
  CHECK_THROWS_AS(TermOperation::projection(2, 2, 2), ArgumentError);
}

TEST_CASE("terms print in prefix notation and parse back") {
  const auto b2 = catalog("b2");
  for (const char* text : {"x", "w", "x5", "zero", "complement(x)",
                           "meet(join(x,y),join(x,z))",
                           "join(meet(x,complement(y)),one)"}) {
    const auto t = parse_term(text, b2.signature());
    CHECK(to_string(t) == text);
  }
  CHECK_THROWS_AS(parse_term("meet(x,", b2.signature()), ParseError);
  CHECK_THROWS_AS(parse_term("meet(x)", b2.signature()), ValidationError);
  CHECK_THROWS_AS(parse_term("nope(x)", b2.signature()), ValidationError);
}

TEST_CASE("median term of l2 is the majority operation") {
  const auto l2 = catalog("l2");
  const auto m = ternary(l2, "join(join(meet(x,y),meet(x,z)),meet(y,z))");
  for (Element x = 0; x < 2; ++x)
    for (Element y = 0; y < 2; ++y)
      for (Element z = 0; z < 2; ++z) {
        const int ones = x + y + z;
        CHECK(m.at(x, y, z) == (ones >= 2 ? 1u : 0u));
      }
}

TEST_CASE("term tables agree with pointwise evaluation") {
  const auto z2z2 = catalog("z2z2");
  const auto t = parse_term("plus(minus(x),plus(y,zero))", z2z2.signature());
  const auto op = term_operation(z2z2, t, 3);
  oracle::each_tuple(4, 3, [&](const std::vector<unsigned>& v) {
    const std::vector<Element> args(v.begin(), v.end());
    CHECK(op(args) == evaluate_term(z2z2, t, args));
    CHECK(op(args) == (v[0] ^ v[1]));
  });
  CHECK_THROWS_AS(term_operation(z2z2, parse_term("plus(x,w)", z2z2.signature()), 3),
                  ArgumentError);
}

TEST_CASE("substitution composes like tables") {
  const auto l2 = catalog("l2");
  const auto s = parse_term("meet(x,join(y,z))", l2.signature());
  const Term args[] = {parse_term("join(x,y)", l2.signature()), Term::variable(2),
                       parse_term("meet(y,z)", l2.signature())};
  const auto composed = substitute(s, args);
  const auto a0 = term_operation(l2, args[0], 3);
  const auto a1 = term_operation(l2, args[1], 3);
  const auto a2 = term_operation(l2, args[2], 3);
  const TermOperation* ptrs[] = {&a0, &a1, &a2};
  CHECK(term_operation(l2, composed, 3) ==
        compose(term_operation(l2, s, 3), ptrs));
  const auto meet = *l2.signature().index_of("meet");
  const TermOperation* two[] = {&a0, &a2};
  CHECK(compose(l2, meet, two) ==
        term_operation(l2, parse_term("meet(join(x,y),meet(y,z))", l2.signature()), 3));
}

TEST_CASE("declared arity covers fictitious variables") {
  const auto t = Term::variable(0).with_arity(3);
  CHECK(t.arity() == 3);
  CHECK(Term::variable(4).arity() == 5);
}
