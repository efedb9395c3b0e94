#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/sequence.hpp"
#include "malt/term.hpp"

namespace malt {

/// How a clone member was first produced: a projection, or a basic
/// operation applied to earlier members.
struct Origin {
  static constexpr std::size_t kProjection = static_cast<std::size_t>(-1);

  std::size_t symbol = kProjection;  // signature index, or kProjection
  std::size_t projection = 0;        // variable index when a projection
  std::vector<std::uint32_t> args;   // member ids
};

/// The k-ary term operations of an algebra, i.e. the free algebra on k
/// generators of the variety it generates, realized inside A^(A^k).
/// Members keep their insertion order; tables are stored in one arena.
class CloneSet {
 public:
  CloneSet(FiniteAlgebra algebra, std::size_t arity);

  const FiniteAlgebra& algebra() const { return algebra_; }
  std::size_t arity() const { return arity_; }
  std::size_t table_length() const { return length_; }
  std::size_t size() const { return origins_.size(); }
  /// False when generation stopped at the cap before reaching a fixpoint.
  bool complete() const { return complete_; }

  std::span<const Element> table(std::size_t id) const {
    return {arena_.data() + id * length_, length_};
  }
  TermOperation operation(std::size_t id) const;
  const Origin& origin(std::size_t id) const { return origins_[id]; }
  std::optional<std::size_t> find(std::span<const Element> table) const;
  /// Id of projection onto variable i.
  std::size_t projection_id(std::size_t i) const { return projections_[i]; }

 private:
  friend CloneSet generate_clone(const FiniteAlgebra&, std::size_t,
                                 std::size_t);

  std::optional<std::size_t> find(std::span<const Element> table,
                                  std::uint64_t hash) const;
  bool insert(std::span<const Element> table, std::uint64_t hash,
              Origin origin);
  void grow_index();

  FiniteAlgebra algebra_;
  std::size_t arity_;
  std::size_t length_;
  std::vector<Element> arena_;
  std::vector<Origin> origins_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;  // open addressing; 0 = empty, else id+1
  std::vector<std::size_t> projections_;
  bool complete_ = true;
};

std::uint64_t hash_table(std::span<const Element> table);

/// Closure of the projections under the basic operations. Constants come
/// first; then each member in turn, as pivot, is combined by every
/// operation (signature order) with all earlier members: every tuple whose
/// largest entry is the pivot is tried once. New members join the queue
/// immediately. Stops at the fixpoint, when every function A^k -> A is
/// present, or when `cap` members exist (then complete() is false).
CloneSet generate_clone(const FiniteAlgebra& algebra, std::size_t arity,
                        std::size_t cap = 1'000'000);

/// Symbolic term for a clone member, rebuilt from origins.
Term reconstruct_term(const CloneSet& clone, std::size_t id);
/// Throws ArgumentError when the table is not in the clone.
Term reconstruct_term(const CloneSet& clone, const TermOperation& op);

struct FreeAlgebra {
  FiniteAlgebra algebra;
  std::vector<Element> generators;
  bool complete = true;
};

/// The clone as an algebra: universe = member ids, operations compose
/// tables, generators = the projections.
FreeAlgebra free_algebra(const CloneSet& clone);
FreeAlgebra free_algebra(const FiniteAlgebra& algebra, std::size_t arity,
                         std::size_t cap = 1'000'000);

enum class LevelStatus {
  Found,         // minimal length within a complete clone
  NoneUpToCap,   // no sequence with at most cap_n steps
  PartialClone,  // clone hit its cap; any length found is an upper bound
};

struct LevelOptions {
  std::size_t cap_n = 12;
  std::size_t cap_clone = 1'000'000;
  bool allow_large_day = false;  // Day levels on algebras of size > 2
};

struct LevelReport {
  SequenceKind kind = SequenceKind::Alvin;
  LevelStatus status = LevelStatus::NoneUpToCap;
  std::optional<std::size_t> level;
  std::size_t cap_n = 0;
  std::size_t clone_size = 0;
  bool clone_complete = true;
  std::vector<std::size_t> witness_ids;
  std::vector<TermOperation> witness;
  std::vector<Term> witness_terms;
};

/// Minimal n with a sequence t_0..t_n of the given kind, found by a layered
/// search over the clone from the first to the last projection. The witness
/// is the lexicographically least shortest path by member id.
LevelReport level(const CloneSet& clone, SequenceKind kind, std::size_t cap_n);
LevelReport level(const FiniteAlgebra& algebra, SequenceKind kind,
                  const LevelOptions& options = {});

}  // namespace malt
