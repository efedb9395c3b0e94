#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "malt/algebra.hpp"

namespace malt {

using Pair = std::pair<Element, Element>;

/// n x n boolean matrix stored as bitset rows.
class BinaryRelation {
 public:
  BinaryRelation() = default;
  explicit BinaryRelation(std::size_t n);

  static BinaryRelation identity(std::size_t n);
  static BinaryRelation full(std::size_t n);
  static BinaryRelation from_pairs(std::size_t n, std::span<const Pair> pairs);

  std::size_t size() const { return n_; }
  bool contains(Element a, Element b) const {
    return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
  }
  void insert(Element a, Element b) {
    bits_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  }
  std::span<const std::uint64_t> row(Element a) const {
    return {bits_.data() + a * words_, words_};
  }
  std::span<std::uint64_t> row(Element a) {
    return {bits_.data() + a * words_, words_};
  }

  std::size_t count() const;
  std::vector<Pair> pairs() const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;

  bool subset_of(const BinaryRelation& other) const;
  /// Lexicographically least pair of *this that is missing from `other`.
  std::optional<Pair> first_missing_from(const BinaryRelation& other) const;

  BinaryRelation& operator|=(const BinaryRelation& other);
  BinaryRelation& operator&=(const BinaryRelation& other);

  bool operator==(const BinaryRelation&) const = default;
  auto operator<=>(const BinaryRelation&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// (a,c) in R o S iff a R b and b S c for some b.
BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);

/// R o S o R o S ... with `factors` factors starting at R; one factor is R,
/// zero factors is the identity relation.
BinaryRelation compose_chain(const BinaryRelation& r, const BinaryRelation& s,
                             std::size_t factors);

/// Left-to-right composition of all factors; identity when empty.
BinaryRelation compose_all(std::span<const BinaryRelation> factors,
                           std::size_t n);

/// R^m = R o R o ... (m factors); R^0 is the identity.
BinaryRelation relation_power(const BinaryRelation& r, std::size_t m);

BinaryRelation intersect(const BinaryRelation& r, const BinaryRelation& s);
BinaryRelation unite(const BinaryRelation& r, const BinaryRelation& s);
BinaryRelation converse(const BinaryRelation& r);
BinaryRelation transitive_closure(const BinaryRelation& r);

/// Sorted pair list, e.g. "{(0,1),(1,2)}".
std::string to_string(const BinaryRelation& r);

}  // namespace malt
