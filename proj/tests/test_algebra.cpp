#include <random>

#include "doctest.h"
#include "malt/algebra.hpp"
#include "malt/error.hpp"
#include "support.hpp"

using namespace malt;

TEST_CASE("catalog algebras load with the expected shapes") {
  struct Shape {
    const char* name;
    std::size_t size;
    std::size_t ops;
  };
  for (auto [name, size, ops] : {Shape{"trivial1", 1, 0}, Shape{"l2", 2, 2},
                                 Shape{"b2", 2, 5}, Shape{"c3", 3, 2},
                                 Shape{"z2mal", 2, 1}, Shape{"z2z2", 4, 3}}) {
    CAPTURE(name);
    const auto a = catalog(name);
    CHECK(a.name() == name);
    CHECK(a.size() == size);
    CHECK(a.operation_count() == ops);
  }
}

TEST_CASE("c3 is the three element chain") {
  const auto a = catalog("c3");
  const auto meet = *a.signature().index_of("meet");
  const auto join = *a.signature().index_of("join");
  for (Element x = 0; x < 3; ++x) {
    for (Element y = 0; y < 3; ++y) {
      const Element args[] = {x, y};
      CHECK(a.apply(meet, args) == std::min(x, y));
      CHECK(a.apply(join, args) == std::max(x, y));
    }
  }
}

TEST_CASE("tuple index is row-major and decode inverts it") {
  const Element t[] = {1, 0, 2};
  CHECK(tuple_index(t, 3) == 1 * 9 + 0 * 3 + 2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5, k = rng() % 5;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= n;
    const std::size_t index = rng() % total;
    std::vector<Element> out(k);
    decode_tuple(index, n, out);
    CHECK(tuple_index(out, n) == index);
  }
}

TEST_CASE("algebra JSON round-trips") {
  for (const auto& name : catalog_names()) {
    const auto a = catalog(name);
    CHECK(load_algebra(algebra_to_json(a)) == a);
  }
}

TEST_CASE("unknown keys such as generators are ignored") {
  const auto a = load_algebra(
      R"({"name":"s","size":2,"generators":[0],"operations":[{"name":"f","arity":1,"table":[1,0]}]})");
  CHECK(a.size() == 2);
}

TEST_CASE("malformed algebras are rejected") {
  CHECK_THROWS_AS(load_algebra("{"), ParseError);
  CHECK_THROWS_AS(load_algebra("[]"), ParseError);
  CHECK_THROWS_AS(load_algebra(R"({"name":"x","size":2})"), ParseError);
  CHECK_THROWS_AS(load_algebra(R"({"name":"x","size":0,"operations":[]})"),
                  ValidationError);
  CHECK_THROWS_WITH_AS(
      load_algebra(
          R"({"name":"x","size":2,"operations":[{"name":"meet","arity":2,"table":[0,0,1]}]})"),
      doctest::Contains("expected length 4"), ValidationError);
  CHECK_THROWS_AS(
      load_algebra(
          R"({"name":"x","size":2,"operations":[{"name":"f","arity":1,"table":[0,2]}]})"),
      ValidationError);
  CHECK_THROWS_AS(
      load_algebra(
          R"({"name":"x","size":2,"operations":[{"name":"f","arity":1,"table":[0,1]},{"name":"f","arity":1,"table":[0,1]}]})"),
      ValidationError);
  CHECK_THROWS_AS(load_algebra_file("/nonexistent/algebra.json"), IoError);
}

TEST_CASE("direct power acts coordinatewise") {
  const auto l2 = catalog("l2");
  const auto sq = direct_power(l2, 2);
  REQUIRE(sq.size() == 4);
  const auto meet = *sq.signature().index_of("meet");
  for (Element u = 0; u < 4; ++u) {
    for (Element v = 0; v < 4; ++v) {
      const Element args[] = {u, v};
      const Element expect = static_cast<Element>(
          std::min(u / 2, v / 2) * 2 + std::min(u % 2, v % 2));
      CHECK(sq.apply(meet, args) == expect);
    }
  }
  CHECK(direct_power(l2, 1) .size() == 2);
  CHECK_THROWS_AS(direct_power(l2, 0), ArgumentError);
}
