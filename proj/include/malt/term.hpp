#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "malt/algebra.hpp"

namespace malt {

/// Table of a k-ary operation A^k -> A, row-major over the argument tuple.
struct TermOperation {
  std::size_t arity = 0;
  std::size_t size = 0;
  std::vector<Element> table;

  static TermOperation projection(std::size_t size, std::size_t arity,
                                  std::size_t index);

  Element operator()(std::span<const Element> args) const {
    return table[tuple_index(args, size)];
  }
  Element at(Element x, Element y, Element z) const {
    return table[(static_cast<std::size_t>(x) * size + y) * size + z];
  }

  bool operator==(const TermOperation&) const = default;
  auto operator<=>(const TermOperation&) const = default;
};

/// Symbolic term: a variable or an operation symbol applied to subterms.
/// A term may carry a declared arity larger than its highest variable, so
/// projections with fictitious variables are representable.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::string symbol, std::vector<Term> args);

  bool is_variable() const { return is_variable_; }
  std::size_t variable_index() const { return index_; }
  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& arguments() const { return args_; }

  /// max(declared arity, 1 + highest variable index); 0 for ground terms.
  std::size_t arity() const;
  Term with_arity(std::size_t arity) const;
  std::size_t node_count() const;

  bool operator==(const Term&) const = default;

 private:
  Term() = default;

  bool is_variable_ = false;
  std::size_t index_ = 0;
  std::size_t declared_arity_ = 0;
  std::string symbol_;
  std::vector<Term> args_;
};

/// Prefix notation; variables 0..3 print as x, y, z, w and higher ones as
/// x4, x5, ...; nullary symbols print bare.
std::string to_string(const Term& term);

/// Inverse of to_string. Identifiers not followed by '(' are nullary
/// symbols when the signature has one of that name, variables otherwise.
Term parse_term(std::string_view text, const Signature& signature);

/// Replaces variable i by replacements[i].
Term substitute(const Term& term, std::span<const Term> replacements);

/// Checks symbols and arities against the signature; throws ValidationError.
void validate_term(const Term& term, const Signature& signature);

/// Pointwise evaluation.
Element evaluate_term(const FiniteAlgebra& algebra, const Term& term,
                      std::span<const Element> assignment);

/// Table of the k-ary operation induced by `term` (requires arity() <= k).
TermOperation term_operation(const FiniteAlgebra& algebra, const Term& term,
                             std::size_t k);

/// Composition f(g_1, ..., g_r) of tables of the same arity, where f is
/// basic operation `op` of `algebra`.
TermOperation compose(const FiniteAlgebra& algebra, std::size_t op,
                      std::span<const TermOperation* const> args);

/// Composition of a term operation with term operations of a common arity.
TermOperation compose(const TermOperation& outer,
                      std::span<const TermOperation* const> args);

}  // namespace malt
