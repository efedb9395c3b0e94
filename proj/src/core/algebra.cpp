#include "malt/algebra.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "malt/budget.hpp"
#include "malt/error.hpp"

namespace malt {

Signature::Signature(std::vector<OperationSymbol> symbols)
    : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw ValidationError("operation with empty name");
    if (!seen.insert(s.name).second) {
      throw ValidationError("duplicate operation symbol '" + s.name + "'");
    }
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

std::size_t tuple_index(std::span<const Element> tuple, std::size_t n) {
  std::size_t index = 0;
  for (Element a : tuple) index = index * n + a;
  return index;
}

void decode_tuple(std::size_t index, std::size_t n, std::span<Element> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Element>(index % n);
    index /= n;
  }
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                             Signature signature,
                             std::vector<std::vector<Element>> tables)
    : name_(std::move(name)),
      size_(size),
      signature_(std::move(signature)),
      tables_(std::move(tables)) {
  if (size_ == 0) throw ValidationError("algebra size must be at least 1");
  if (size_ > std::numeric_limits<Element>::max()) {
    throw ValidationError("algebra size too large");
  }
  if (tables_.size() != signature_.size()) {
    throw ValidationError("expected " + std::to_string(signature_.size()) +
                          " tables, got " + std::to_string(tables_.size()));
  }
  for (std::size_t op = 0; op < tables_.size(); ++op) {
    const auto& sym = signature_[op];
    const std::size_t expected = checked_power(size_, sym.arity);
    if (tables_[op].size() != expected) {
      throw ValidationError("operation '" + sym.name + "': expected length " +
                            std::to_string(expected) + ", got " +
                            std::to_string(tables_[op].size()));
    }
    for (std::size_t i = 0; i < expected; ++i) {
      if (tables_[op][i] >= size_) {
        throw ValidationError("operation '" + sym.name + "': entry " +
                              std::to_string(i) + " = " +
                              std::to_string(tables_[op][i]) +
                              " is out of range for size " +
                              std::to_string(size_));
      }
    }
  }
}

Element FiniteAlgebra::apply(std::size_t op,
                             std::span<const Element> args) const {
  return tables_[op][tuple_index(args, size_)];
}

namespace {

using nlohmann::json;

template <class T>
T get_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

FiniteAlgebra load_algebra(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra document must be an object");
  auto name = get_field<std::string>(doc, "name", "algebra");
  auto size_value = get_field<long long>(doc, "size", "algebra");
  if (size_value < 1) throw ValidationError("algebra size must be at least 1");
  auto ops_it = doc.find("operations");
  if (ops_it == doc.end() || !ops_it->is_array()) {
    throw ParseError("algebra: missing array 'operations'");
  }
  std::vector<OperationSymbol> symbols;
  std::vector<std::vector<Element>> tables;
  std::size_t index = 0;
  for (const auto& op : *ops_it) {
    const std::string where = "operation #" + std::to_string(index++);
    if (!op.is_object()) throw ParseError(where + ": must be an object");
    auto op_name = get_field<std::string>(op, "name", where);
    auto arity = get_field<long long>(op, "arity", where);
    if (arity < 0) throw ValidationError("operation '" + op_name + "': negative arity");
    auto raw = get_field<std::vector<long long>>(op, "table", where);
    std::vector<Element> table;
    table.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] < 0 || raw[i] >= size_value) {
        throw ValidationError("operation '" + op_name + "': entry " +
                              std::to_string(i) + " = " +
                              std::to_string(raw[i]) +
                              " is out of range for size " +
                              std::to_string(size_value));
      }
      table.push_back(static_cast<Element>(raw[i]));
    }
    symbols.push_back({op_name, static_cast<std::size_t>(arity)});
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(std::move(name), static_cast<std::size_t>(size_value),
                       Signature(std::move(symbols)), std::move(tables));
}

FiniteAlgebra load_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_algebra(buffer.str());
}

std::string algebra_to_json(const FiniteAlgebra& algebra,
                            std::span<const Element> generators) {
  nlohmann::ordered_json doc;
  doc["name"] = algebra.name();
  doc["size"] = algebra.size();
  auto ops = nlohmann::ordered_json::array();
  for (std::size_t op = 0; op < algebra.operation_count(); ++op) {
    nlohmann::ordered_json entry;
    entry["name"] = algebra.signature()[op].name;
    entry["arity"] = algebra.signature()[op].arity;
    const auto table = algebra.table(op);
    entry["table"] = std::vector<Element>(table.begin(), table.end());
    ops.push_back(std::move(entry));
  }
  doc["operations"] = std::move(ops);
  if (!generators.empty()) {
    doc["generators"] = std::vector<Element>(generators.begin(), generators.end());
  }
  return doc.dump();
}

FiniteAlgebra direct_power(const FiniteAlgebra& algebra, std::size_t m) {
  if (m == 0) throw ArgumentError("direct power exponent must be positive");
  const std::size_t n = algebra.size();
  const std::size_t big = checked_power(n, m);
  std::vector<std::vector<Element>> tables;
  std::size_t bytes = 0;
  for (const auto& sym : algebra.signature().symbols()) {
    bytes += checked_product(checked_power(big, sym.arity), sizeof(Element));
  }
  require_budget(bytes, "direct power");

  std::vector<Element> args_big;
  std::vector<Element> coords;
  std::vector<Element> column;
  for (std::size_t op = 0; op < algebra.operation_count(); ++op) {
    const std::size_t arity = algebra.signature()[op].arity;
    const std::size_t length = checked_power(big, arity);
    std::vector<Element> table(length);
    args_big.assign(arity, 0);
    coords.assign(arity * m, 0);
    column.assign(arity, 0);
    for (std::size_t idx = 0; idx < length; ++idx) {
      decode_tuple(idx, big, args_big);
      for (std::size_t j = 0; j < arity; ++j) {
        decode_tuple(args_big[j], n, std::span(coords).subspan(j * m, m));
      }
      std::size_t result = 0;
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < arity; ++j) column[j] = coords[j * m + c];
        result = result * n + algebra.apply(op, column);
      }
      table[idx] = static_cast<Element>(result);
    }
    tables.push_back(std::move(table));
  }
  std::string name = m == 1 ? algebra.name()
                            : algebra.name() + "^" + std::to_string(m);
  return FiniteAlgebra(std::move(name), big, algebra.signature(),
                       std::move(tables));
}

}  // namespace malt
