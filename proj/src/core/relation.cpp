#include "malt/relation.hpp"

#include <bit>

#include "malt/budget.hpp"
#include "malt/error.hpp"

namespace malt {

BinaryRelation::BinaryRelation(std::size_t n)
    : n_(n), words_((n + 63) / 64) {
  require_budget(checked_product(checked_product(n, words_), 8),
                 "binary relation");
  bits_.assign(n_ * words_, 0);
}

BinaryRelation BinaryRelation::identity(std::size_t n) {
  BinaryRelation r(n);
  for (std::size_t a = 0; a < n; ++a) {
    r.insert(static_cast<Element>(a), static_cast<Element>(a));
  }
  return r;
}

BinaryRelation BinaryRelation::full(std::size_t n) {
  BinaryRelation r(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      r.insert(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  return r;
}

BinaryRelation BinaryRelation::from_pairs(std::size_t n,
                                          std::span<const Pair> pairs) {
  BinaryRelation r(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw ArgumentError("pair outside the universe");
    r.insert(a, b);
  }
  return r;
}

std::size_t BinaryRelation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Pair> BinaryRelation::pairs() const {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (contains(static_cast<Element>(a), static_cast<Element>(b))) {
        out.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
      }
    }
  }
  return out;
}

bool BinaryRelation::is_reflexive() const {
  for (std::size_t a = 0; a < n_; ++a) {
    if (!contains(static_cast<Element>(a), static_cast<Element>(a))) return false;
  }
  return true;
}

bool BinaryRelation::is_symmetric() const { return *this == converse(*this); }

bool BinaryRelation::is_transitive() const {
  return compose(*this, *this).subset_of(*this);
}

bool BinaryRelation::subset_of(const BinaryRelation& other) const {
  if (n_ != other.n_) throw ArgumentError("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

std::optional<Pair> BinaryRelation::first_missing_from(
    const BinaryRelation& other) const {
  if (n_ != other.n_) throw ArgumentError("relation size mismatch");
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t diff = bits_[a * words_ + w] & ~other.bits_[a * words_ + w];
      if (diff) {
        return Pair{static_cast<Element>(a),
                    static_cast<Element>(w * 64 + std::countr_zero(diff))};
      }
    }
  }
  return std::nullopt;
}

BinaryRelation& BinaryRelation::operator|=(const BinaryRelation& other) {
  if (n_ != other.n_) throw ArgumentError("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BinaryRelation& BinaryRelation::operator&=(const BinaryRelation& other) {
  if (n_ != other.n_) throw ArgumentError("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
  if (r.size() != s.size()) throw ArgumentError("relation size mismatch");
  const std::size_t n = r.size();
  BinaryRelation out(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto dst = out.row(static_cast<Element>(a));
    const auto src = r.row(static_cast<Element>(a));
    for (std::size_t w = 0; w < src.size(); ++w) {
      std::uint64_t bits = src[w];
      while (bits) {
        const std::size_t b = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        const auto srow = s.row(static_cast<Element>(b));
        for (std::size_t v = 0; v < dst.size(); ++v) dst[v] |= srow[v];
      }
    }
  }
  return out;
}

BinaryRelation compose_chain(const BinaryRelation& r, const BinaryRelation& s,
                             std::size_t factors) {
  if (r.size() != s.size()) throw ArgumentError("relation size mismatch");
  if (factors == 0) return BinaryRelation::identity(r.size());
  BinaryRelation out = r;
  for (std::size_t i = 1; i < factors; ++i) {
    out = compose(out, i % 2 == 1 ? s : r);
  }
  return out;
}

BinaryRelation compose_all(std::span<const BinaryRelation> factors,
                           std::size_t n) {
  if (factors.empty()) return BinaryRelation::identity(n);
  BinaryRelation out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = compose(out, factors[i]);
  return out;
}

BinaryRelation relation_power(const BinaryRelation& r, std::size_t m) {
  return compose_chain(r, r, m);
}

BinaryRelation intersect(const BinaryRelation& r, const BinaryRelation& s) {
  BinaryRelation out = r;
  out &= s;
  return out;
}

BinaryRelation unite(const BinaryRelation& r, const BinaryRelation& s) {
  BinaryRelation out = r;
  out |= s;
  return out;
}

BinaryRelation converse(const BinaryRelation& r) {
  const std::size_t n = r.size();
  BinaryRelation out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (r.contains(static_cast<Element>(a), static_cast<Element>(b))) {
        out.insert(static_cast<Element>(b), static_cast<Element>(a));
      }
    }
  }
  return out;
}

BinaryRelation transitive_closure(const BinaryRelation& r) {
  // Warshall: after step k, rows reaching k absorb row k.
  BinaryRelation out = r;
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto krow = std::vector<std::uint64_t>(out.row(static_cast<Element>(k)).begin(),
                                                 out.row(static_cast<Element>(k)).end());
    for (std::size_t a = 0; a < n; ++a) {
      if (!out.contains(static_cast<Element>(a), static_cast<Element>(k))) continue;
      auto dst = out.row(static_cast<Element>(a));
      for (std::size_t v = 0; v < dst.size(); ++v) dst[v] |= krow[v];
    }
  }
  return out;
}

std::string to_string(const BinaryRelation& r) {
  std::string out = "{";
  bool first = true;
  for (auto [a, b] : r.pairs()) {
    if (!first) out += ',';
    first = false;
    out += '(' + std::to_string(a) + ',' + std::to_string(b) + ')';
  }
  out += '}';
  return out;
}

}  // namespace malt
