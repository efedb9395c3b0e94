#include "malt/term.hpp"

#include <algorithm>
#include <cctype>

#include "malt/budget.hpp"
#include "malt/error.hpp"

namespace malt {

TermOperation TermOperation::projection(std::size_t size, std::size_t arity,
                                        std::size_t index) {
  if (index >= arity) throw ArgumentError("projection index out of range");
  TermOperation op{arity, size, std::vector<Element>(checked_power(size, arity))};
  // Coordinate `index` of tuple t is (t / n^(arity-1-index)) mod n.
  const std::size_t stride = checked_power(size, arity - 1 - index);
  for (std::size_t t = 0; t < op.table.size(); ++t) {
    op.table[t] = static_cast<Element>((t / stride) % size);
  }
  return op;
}

Term Term::variable(std::size_t index) {
  Term t;
  t.is_variable_ = true;
  t.index_ = index;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.symbol_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::arity() const {
  std::size_t used = 0;
  if (is_variable_) {
    used = index_ + 1;
  } else {
    for (const auto& a : args_) used = std::max(used, a.arity());
  }
  return std::max(used, declared_arity_);
}

Term Term::with_arity(std::size_t arity) const {
  Term t = *this;
  t.declared_arity_ = arity;
  return t;
}

std::size_t Term::node_count() const {
  std::size_t count = 1;
  for (const auto& a : args_) count += a.node_count();
  return count;
}

namespace {

std::string variable_name(std::size_t index) {
  static constexpr const char* kNames[] = {"x", "y", "z", "w"};
  if (index < 4) return kNames[index];
  return "x" + std::to_string(index);
}

void write(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += variable_name(t.variable_index());
    return;
  }
  out += t.symbol();
  if (t.arguments().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.arguments().size(); ++i) {
    if (i) out += ',';
    write(t.arguments()[i], out);
  }
  out += ')';
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig)
      : text_(text), sig_(sig) {}

  Term parse() {
    Term t = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("term: " + why + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  static std::optional<std::size_t> variable_index(const std::string& name) {
    if (name == "x") return 0;
    if (name == "y") return 1;
    if (name == "z") return 2;
    if (name == "w") return 3;
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return std::stoul(name.substr(1));
    }
    return std::nullopt;
  }

  Term parse_term() {
    std::string name = identifier();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Term> args;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(parse_term());
          skip_space();
          if (pos_ >= text_.size()) fail("unterminated argument list");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
      Term t = Term::apply(std::move(name), std::move(args));
      validate_term(t, sig_);
      return t;
    }
    if (auto op = sig_.index_of(name); op && sig_[*op].arity == 0) {
      return Term::apply(std::move(name), {});
    }
    if (auto v = variable_index(name)) return Term::variable(*v);
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

Element eval(const FiniteAlgebra& algebra, const Term& t,
             std::span<const Element> assignment) {
  if (t.is_variable()) return assignment[t.variable_index()];
  auto op = algebra.signature().index_of(t.symbol());
  if (!op) throw ValidationError("unknown operation symbol '" + t.symbol() + "'");
  if (algebra.signature()[*op].arity != t.arguments().size()) {
    throw ValidationError("operation '" + t.symbol() + "' applied to " +
                          std::to_string(t.arguments().size()) + " arguments");
  }
  std::vector<Element> args;
  args.reserve(t.arguments().size());
  for (const auto& a : t.arguments()) args.push_back(eval(algebra, a, assignment));
  return algebra.apply(*op, args);
}

TermOperation table_of(const FiniteAlgebra& algebra, const Term& t,
                       std::size_t k) {
  if (t.is_variable()) {
    return TermOperation::projection(algebra.size(), k, t.variable_index());
  }
  auto op = algebra.signature().index_of(t.symbol());
  if (!op) throw ValidationError("unknown operation symbol '" + t.symbol() + "'");
  if (algebra.signature()[*op].arity != t.arguments().size()) {
    throw ValidationError("operation '" + t.symbol() + "' applied to " +
                          std::to_string(t.arguments().size()) + " arguments");
  }
  std::vector<TermOperation> children;
  children.reserve(t.arguments().size());
  for (const auto& a : t.arguments()) children.push_back(table_of(algebra, a, k));
  std::vector<const TermOperation*> ptrs;
  for (const auto& c : children) ptrs.push_back(&c);
  if (ptrs.empty()) {
    // Constant: fill with the nullary value.
    TermOperation result{k, algebra.size(),
                         std::vector<Element>(checked_power(algebra.size(), k),
                                              algebra.table(*op)[0])};
    return result;
  }
  return compose(algebra, *op, ptrs);
}

}  // namespace

std::string to_string(const Term& term) {
  std::string out;
  write(term, out);
  return out;
}

Term parse_term(std::string_view text, const Signature& signature) {
  return TermParser(text, signature).parse();
}

Term substitute(const Term& term, std::span<const Term> replacements) {
  if (term.is_variable()) {
    if (term.variable_index() >= replacements.size()) {
      throw ArgumentError("substitution does not cover variable " +
                          std::to_string(term.variable_index()));
    }
    return replacements[term.variable_index()];
  }
  std::vector<Term> args;
  args.reserve(term.arguments().size());
  for (const auto& a : term.arguments()) args.push_back(substitute(a, replacements));
  return Term::apply(term.symbol(), std::move(args));
}

void validate_term(const Term& term, const Signature& signature) {
  if (term.is_variable()) return;
  auto op = signature.index_of(term.symbol());
  if (!op) throw ValidationError("unknown operation symbol '" + term.symbol() + "'");
  if (signature[*op].arity != term.arguments().size()) {
    throw ValidationError("operation '" + term.symbol() + "' has arity " +
                          std::to_string(signature[*op].arity) + ", applied to " +
                          std::to_string(term.arguments().size()) + " arguments");
  }
  for (const auto& a : term.arguments()) validate_term(a, signature);
}

Element evaluate_term(const FiniteAlgebra& algebra, const Term& term,
                      std::span<const Element> assignment) {
  if (assignment.size() < term.arity()) {
    throw ArgumentError("assignment has " + std::to_string(assignment.size()) +
                        " elements, term needs " + std::to_string(term.arity()));
  }
  for (Element a : assignment) {
    if (a >= algebra.size()) throw ArgumentError("assignment element out of range");
  }
  return eval(algebra, term, assignment);
}

TermOperation term_operation(const FiniteAlgebra& algebra, const Term& term,
                             std::size_t k) {
  if (term.arity() > k) {
    throw ArgumentError("term has arity " + std::to_string(term.arity()) +
                        ", requested " + std::to_string(k));
  }
  return table_of(algebra, term, k);
}

TermOperation compose(const FiniteAlgebra& algebra, std::size_t op,
                      std::span<const TermOperation* const> args) {
  const std::size_t arity = algebra.signature()[op].arity;
  if (args.size() != arity || arity == 0) {
    throw ArgumentError("compose: argument count does not match arity");
  }
  const std::size_t k = args[0]->arity;
  const std::size_t length = args[0]->table.size();
  TermOperation result{k, algebra.size(), std::vector<Element>(length)};
  const auto table = algebra.table(op);
  const std::size_t n = algebra.size();
  for (std::size_t t = 0; t < length; ++t) {
    std::size_t index = 0;
    for (const TermOperation* a : args) index = index * n + a->table[t];
    result.table[t] = table[index];
  }
  return result;
}

TermOperation compose(const TermOperation& outer,
                      std::span<const TermOperation* const> args) {
  if (args.size() != outer.arity || args.empty()) {
    throw ArgumentError("compose: argument count does not match arity");
  }
  const std::size_t length = args[0]->table.size();
  TermOperation result{args[0]->arity, outer.size, std::vector<Element>(length)};
  for (std::size_t t = 0; t < length; ++t) {
    std::size_t index = 0;
    for (const TermOperation* a : args) index = index * outer.size + a->table[t];
    result.table[t] = outer.table[index];
  }
  return result;
}

}  // namespace malt
