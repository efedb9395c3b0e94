#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/relation.hpp"

namespace malt {

/// True iff R is closed under every operation applied coordinatewise to
/// related pairs.
bool is_compatible(const FiniteAlgebra& algebra, const BinaryRelation& r);

/// Least compatible relation containing R.
BinaryRelation compatible_closure(const FiniteAlgebra& algebra,
                                  BinaryRelation r);

/// Reflexive, symmetric, compatible relation.
class Tolerance {
 public:
  /// Throws ValidationError unless R is a tolerance of `algebra`.
  Tolerance(const FiniteAlgebra& algebra, BinaryRelation r);

  const BinaryRelation& relation() const { return relation_; }
  std::size_t size() const { return relation_.size(); }

  bool operator==(const Tolerance&) const = default;
  auto operator<=>(const Tolerance&) const = default;

 private:
  struct Unchecked {};
  Tolerance(Unchecked, BinaryRelation r) : relation_(std::move(r)) {}
  friend Tolerance tolerance_generated(const FiniteAlgebra&,
                                       std::span<const Pair>);
  friend std::vector<Tolerance> all_tolerances(const FiniteAlgebra&);

  BinaryRelation relation_;
};

/// Compatible equivalence relation, stored as canonical labels: label[a] is
/// the index of a's block, blocks numbered by their least element.
/// Congruences order by pair count, then by labels, so the identity comes
/// first and the full relation last.
class Congruence {
 public:
  static Congruence identity(std::size_t n);
  static Congruence full(std::size_t n);
  /// Canonicalizes arbitrary block labels. No compatibility check.
  static Congruence from_labels(std::span<const Element> labels);
  /// Throws ValidationError unless R is a congruence of `algebra`.
  static Congruence from_relation(const FiniteAlgebra& algebra,
                                  const BinaryRelation& r);

  std::size_t size() const { return labels_.size(); }
  std::span<const Element> labels() const { return labels_; }
  bool related(Element a, Element b) const { return labels_[a] == labels_[b]; }
  std::size_t block_count() const { return block_count_; }
  std::size_t pair_count() const { return pair_count_; }
  std::vector<std::vector<Element>> blocks() const;
  BinaryRelation relation() const;

  bool operator==(const Congruence& other) const {
    return labels_ == other.labels_;
  }
  std::strong_ordering operator<=>(const Congruence& other) const;

 private:
  explicit Congruence(std::vector<Element> canonical_labels);

  std::vector<Element> labels_;
  std::size_t block_count_ = 0;
  std::size_t pair_count_ = 0;
};

/// Partition notation, e.g. "{{0,1},{2}}".
std::string to_string(const Congruence& c);

Tolerance tolerance_generated(const FiniteAlgebra& algebra,
                              std::span<const Pair> pairs);
Congruence congruence_generated(const FiniteAlgebra& algebra,
                                std::span<const Pair> pairs);
Congruence join_congruences(const Congruence& a, const Congruence& b);
Congruence meet_congruences(const Congruence& a, const Congruence& b);

/// All congruences of an algebra in canonical order, with meet and join
/// tables over member indices.
class CongruenceLattice {
 public:
  explicit CongruenceLattice(std::vector<Congruence> members);

  std::size_t size() const { return members_.size(); }
  const Congruence& operator[](std::size_t i) const { return members_[i]; }
  std::span<const Congruence> members() const { return members_; }
  std::span<const BinaryRelation> relations() const { return relations_; }
  std::optional<std::size_t> index_of(const Congruence& c) const;

  std::size_t meet(std::size_t i, std::size_t j) const {
    return meet_[i * size() + j];
  }
  std::size_t join(std::size_t i, std::size_t j) const {
    return join_[i * size() + j];
  }
  bool leq(std::size_t i, std::size_t j) const { return meet(i, j) == i; }
  std::size_t bottom() const { return 0; }
  std::size_t top() const { return size() - 1; }

 private:
  std::vector<Congruence> members_;
  std::vector<BinaryRelation> relations_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
};

/// Principal congruences closed under join, plus the identity. Throws
/// BudgetExceeded when more than `max_members` congruences appear.
CongruenceLattice all_congruences(const FiniteAlgebra& algebra,
                                  std::size_t max_members = 100000);

struct LawCheck {
  bool holds = true;
  std::optional<std::array<std::size_t, 3>> witness;  // (x, y, z) indices
};

/// x <= z implies x + (y z) = (x + y) z, over all triples.
LawCheck check_modular(const CongruenceLattice& lattice);
/// x (y + z) = x y + x z, over all triples.
LawCheck check_distributive(const CongruenceLattice& lattice);
inline bool is_modular(const CongruenceLattice& l) {
  return check_modular(l).holds;
}
inline bool is_distributive(const CongruenceLattice& l) {
  return check_distributive(l).holds;
}

/// Every tolerance when size <= 5 (filtering all reflexive symmetric
/// relations); otherwise the tolerances generated by at most two pairs.
/// Sorted.
std::vector<Tolerance> all_tolerances(const FiniteAlgebra& algebra);

/// Compatible closures of the identity plus at most `max_seeds` pairs,
/// deduplicated and sorted. All are reflexive and compatible.
std::vector<BinaryRelation> reflexive_compatible_relations(
    const FiniteAlgebra& algebra, std::size_t max_seeds = 2);

}  // namespace malt
