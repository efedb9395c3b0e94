#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace malt {

using Element = std::uint32_t;

struct OperationSymbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const OperationSymbol&) const = default;
};

/// Ordered list of operation symbols. The order is the enumeration order
/// used by clone generation, so it is part of the reproducibility contract.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OperationSymbol> symbols);

  std::span<const OperationSymbol> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const OperationSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t max_arity() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<OperationSymbol> symbols_;
};

// Tuples over {0..n-1} are encoded row-major:
//   index(a_0, ..., a_{k-1}) = sum_i a_i * n^(k-1-i).
std::size_t tuple_index(std::span<const Element> tuple, std::size_t n);
void decode_tuple(std::size_t index, std::size_t n, std::span<Element> out);

class FiniteAlgebra {
 public:
  /// Validates every invariant; throws ValidationError naming the offending
  /// symbol and index.
  FiniteAlgebra(std::string name, std::size_t size, Signature signature,
                std::vector<std::vector<Element>> tables);

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  const Signature& signature() const { return signature_; }
  std::size_t operation_count() const { return tables_.size(); }
  std::span<const Element> table(std::size_t op) const { return tables_[op]; }

  /// Table lookup of operation `op` at `args` (length must equal the arity).
  Element apply(std::size_t op, std::span<const Element> args) const;

  bool operator==(const FiniteAlgebra&) const = default;

 private:
  std::string name_;
  std::size_t size_;
  Signature signature_;
  std::vector<std::vector<Element>> tables_;
};

/// Parses the JSON algebra format
///   {"name": str, "size": int, "operations": [{"name", "arity", "table"}]}
/// Unknown top-level keys (e.g. "generators") are ignored.
FiniteAlgebra load_algebra(std::string_view text);
FiniteAlgebra load_algebra_file(const std::filesystem::path& path);
std::string algebra_to_json(const FiniteAlgebra& algebra,
                            std::span<const Element> generators = {});

/// A^m with m-tuples encoded row-major and operations acting coordinatewise.
FiniteAlgebra direct_power(const FiniteAlgebra& algebra, std::size_t m);

}  // namespace malt
