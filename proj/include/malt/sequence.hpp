#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/congruence.hpp"
#include "malt/term.hpp"

namespace malt {

enum class SequenceKind { Jonsson, Alvin, Gumm, Day };

std::string_view to_string(SequenceKind kind);
std::optional<SequenceKind> parse_kind(std::string_view name);
/// 4 for Day sequences, 3 otherwise.
std::size_t kind_arity(SequenceKind kind);

/// One failed equation instance. `position` is the index h of the term the
/// equation is about (for slice equations, the left one of t_h, t_{h+1});
/// `point` is the substitution of the variables.
struct Violation {
  std::string tag;
  std::size_t position = 0;
  std::vector<Element> point;
  Element lhs = 0;
  Element rhs = 0;

  bool operator==(const Violation&) const = default;
};

struct ValidityReport {
  std::vector<Violation> violations;  // at most kMaxRecorded, in check order
  std::size_t violation_count = 0;
  std::vector<std::string> notes;

  static constexpr std::size_t kMaxRecorded = 64;

  bool valid() const { return violation_count == 0; }
  void add(Violation v);
  void merge(const ValidityReport& other);
};

/// Checks a Jonsson, alvin, Gumm or Day sequence t_0..t_n pointwise.
///
/// Tags: A1 (x = t_h(x,y,x), 0<h<n), G1 (same, for Gumm 1<h<n), A2
/// (t_0 = x), A3 (t_h(x,z,z) = t_{h+1}(x,z,z)), A4 (t_h(x,x,z) =
/// t_{h+1}(x,x,z)), A5 (t_n = z). Alvin and Gumm use A3 for even h and A4
/// for odd h; Jonsson swaps the parities.
///
/// Day sequences m_0..m_r use D1 (m_0 = x), D2 (m_r = w), D3
/// (m_i(x,y,y,x) = x), D4 (m_i(x,x,w,w) = m_{i+1}(x,x,w,w), i even) and D5
/// (m_i(x,y,y,w) = m_{i+1}(x,y,y,w), i odd). These follow Day's original
/// characterization of modularity.
ValidityReport check_sequence(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind);

/// s*(x,y,z) = s(x, s(x,y,y), s(x,y,z)), applied to each member.
TermOperation star(const TermOperation& s);
std::vector<TermOperation> star_transform(
    const FiniteAlgebra& algebra, std::span<const TermOperation> sequence);
std::vector<TermOperation> double_star_transform(
    const FiniteAlgebra& algebra, std::span<const TermOperation> sequence);

/// Symbolic star: substitutes structurally, duplicating subterms.
Term star(const Term& s);
std::vector<Term> star_transform(std::span<const Term> sequence);

/// (T_m): a Theta^m c implies a Theta s1(a,a,c). Violations are tagged
/// "T_m" with point (a, c), lhs a and rhs s1(a,a,c).
ValidityReport check_tm(const FiniteAlgebra& algebra, const TermOperation& s1,
                        const Tolerance& theta, std::size_t m);

enum class Direction { Forward, Converse };

/// (A_m): (a,c) in X_1 o ... o X_m with X_j = R or its converse implies
/// a R s1(a,a,c). Throws ArgumentError unless R is reflexive and compatible.
ValidityReport check_am(const FiniteAlgebra& algebra, const TermOperation& s1,
                        const BinaryRelation& r,
                        std::span<const Direction> pattern);

/// All 2^m direction patterns of length m, Forward-first lexicographic.
std::vector<std::vector<Direction>> all_patterns(std::size_t m);

struct WitnessCheck {
  std::vector<TermOperation> sequence;
  ValidityReport sequence_check;  // check_sequence on the result
  ValidityReport property_check;  // (T_m) or (A_m) over the test relations
  std::size_t relations_checked = 0;
};

/// Applies the star transform m-1 times and re-checks the result: the
/// sequence stays valid and its s_1 satisfies (T_m) on every tolerance of
/// the algebra. Throws ArgumentError if the input is not a valid sequence.
WitnessCheck build_tm_witness(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind, std::size_t m);

/// Applies the double star m-1 times; s_1 is checked against (A_m) for all
/// 2^m patterns and every reflexive compatible relation generated by at
/// most two pairs.
WitnessCheck build_am_witness(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind, std::size_t m);

}  // namespace malt
