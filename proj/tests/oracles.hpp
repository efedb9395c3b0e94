// Brute-force reference implementations. They share nothing with the
// library beyond reading operation tables, and favor obviousness over speed.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/relation.hpp"
#include "malt/sequence.hpp"

namespace oracle {

using Rel = std::set<std::pair<unsigned, unsigned>>;
using Table = std::vector<unsigned>;

inline Rel to_set(const malt::BinaryRelation& r) {
  Rel out;
  for (unsigned a = 0; a < r.size(); ++a)
    for (unsigned b = 0; b < r.size(); ++b)
      if (r.contains(a, b)) out.insert({a, b});
  return out;
}

inline malt::BinaryRelation from_set(std::size_t n, const Rel& r) {
  std::vector<malt::Pair> pairs(r.begin(), r.end());
  return malt::BinaryRelation::from_pairs(n, pairs);
}

inline Rel identity(unsigned n) {
  Rel out;
  for (unsigned a = 0; a < n; ++a) out.insert({a, a});
  return out;
}

inline Rel compose(const Rel& r, const Rel& s) {
  Rel out;
  for (auto [a, b] : r)
    for (auto [c, d] : s)
      if (b == c) out.insert({a, d});
  return out;
}

// r o s o r o ... with k factors; k = 0 gives the identity.
inline Rel chain(unsigned n, const Rel& r, const Rel& s, std::size_t k) {
  Rel out = identity(n);
  for (std::size_t i = 0; i < k; ++i) out = compose(out, i % 2 == 0 ? r : s);
  return out;
}

inline Rel power(unsigned n, const Rel& r, std::size_t k) { return chain(n, r, r, k); }

inline Rel meet(const Rel& r, const Rel& s) {
  Rel out;
  std::set_intersection(r.begin(), r.end(), s.begin(), s.end(),
                        std::inserter(out, out.begin()));
  return out;
}

inline Rel converse(const Rel& r) {
  Rel out;
  for (auto [a, b] : r) out.insert({b, a});
  return out;
}

inline Rel closure(const Rel& r) {
  Rel out = r;
  for (;;) {
    Rel next = out;
    for (auto p : compose(out, out)) next.insert(p);
    if (next == out) return out;
    out = next;
  }
}

inline bool subset(const Rel& r, const Rel& s) {
  return std::includes(s.begin(), s.end(), r.begin(), r.end());
}

inline unsigned apply(const malt::FiniteAlgebra& a, std::size_t op,
                      const std::vector<unsigned>& args) {
  std::size_t index = 0;
  for (unsigned x : args) index = index * a.size() + x;
  return a.table(op)[index];
}

// Calls fn on every tuple in {0..base-1}^len, lexicographically.
inline void each_tuple(std::size_t base, std::size_t len,
                       const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> t(len, 0);
  if (len > 0 && base == 0) return;
  for (;;) {
    fn(t);
    std::size_t j = len;
    while (j > 0) {
      --j;
      if (++t[j] < base) break;
      t[j] = 0;
      if (j == 0) return;
    }
    if (len == 0) return;
  }
}

inline bool compatible(const malt::FiniteAlgebra& a, const Rel& r) {
  const std::vector<std::pair<unsigned, unsigned>> pairs(r.begin(), r.end());
  for (std::size_t op = 0; op < a.operation_count(); ++op) {
    const std::size_t k = a.signature()[op].arity;
    bool ok = true;
    each_tuple(pairs.size(), k, [&](const std::vector<unsigned>& pick) {
      std::vector<unsigned> left, right;
      for (unsigned i : pick) {
        left.push_back(pairs[i].first);
        right.push_back(pairs[i].second);
      }
      if (!r.count({apply(a, op, left), apply(a, op, right)})) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline Rel compatible_closure(const malt::FiniteAlgebra& a, Rel r) {
  for (;;) {
    Rel next = r;
    const std::vector<std::pair<unsigned, unsigned>> pairs(r.begin(), r.end());
    for (std::size_t op = 0; op < a.operation_count(); ++op) {
      const std::size_t k = a.signature()[op].arity;
      each_tuple(pairs.size(), k, [&](const std::vector<unsigned>& pick) {
        std::vector<unsigned> left, right;
        for (unsigned i : pick) {
          left.push_back(pairs[i].first);
          right.push_back(pairs[i].second);
        }
        next.insert({apply(a, op, left), apply(a, op, right)});
      });
    }
    if (next == r) return r;
    r = next;
  }
}

// All partitions of {0..n-1} as equivalence relations.
inline std::vector<Rel> partitions(unsigned n) {
  std::vector<Rel> out;
  std::vector<unsigned> label(n, 0);
  std::function<void(unsigned, unsigned)> go = [&](unsigned i, unsigned blocks) {
    if (i == n) {
      Rel r;
      for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
          if (label[a] == label[b]) r.insert({a, b});
      out.push_back(r);
      return;
    }
    for (unsigned b = 0; b <= blocks && b < n; ++b) {
      label[i] = b;
      go(i + 1, std::max(blocks, b + 1));
    }
  };
  go(0, 0);
  return out;
}

inline std::vector<Rel> congruences(const malt::FiniteAlgebra& a) {
  std::vector<Rel> out;
  for (auto& p : partitions(static_cast<unsigned>(a.size())))
    if (compatible(a, p)) out.push_back(p);
  return out;
}

inline std::vector<Rel> tolerances(const malt::FiniteAlgebra& a) {
  const unsigned n = static_cast<unsigned>(a.size());
  std::vector<std::pair<unsigned, unsigned>> off;
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = x + 1; y < n; ++y) off.push_back({x, y});
  std::vector<Rel> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    Rel r = identity(n);
    for (std::size_t i = 0; i < off.size(); ++i) {
      if (mask >> i & 1) {
        r.insert(off[i]);
        r.insert({off[i].second, off[i].first});
      }
    }
    if (compatible(a, r)) out.push_back(r);
  }
  return out;
}

// Equivalence join: transitive closure of the union.
inline Rel join(const Rel& r, const Rel& s) {
  Rel u = r;
  u.insert(s.begin(), s.end());
  return closure(u);
}

// The k-ary clone by repeated closure; a sorted set of tables.
inline std::set<Table> clone(const malt::FiniteAlgebra& a, std::size_t k) {
  const std::size_t n = a.size();
  std::size_t len = 1;
  for (std::size_t i = 0; i < k; ++i) len *= n;
  std::set<Table> members;
  for (std::size_t v = 0; v < k; ++v) {
    Table t(len);
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t rest = i;
      for (std::size_t j = k - 1; j > v; --j) rest /= n;
      t[i] = static_cast<unsigned>(rest % n);
    }
    members.insert(t);
  }
  // Semi-naive rounds: only tuples touching a member added last round.
  std::vector<Table> list(members.begin(), members.end());
  std::size_t fresh_from = 0;
  while (fresh_from < list.size()) {
    const std::size_t end = list.size();
    for (std::size_t op = 0; op < a.operation_count(); ++op) {
      const std::size_t r = a.signature()[op].arity;
      if (r == 0 && fresh_from > 0) continue;
      each_tuple(end, r, [&](const std::vector<unsigned>& pick) {
        if (r > 0 && *std::max_element(pick.begin(), pick.end()) < fresh_from) return;
        Table t(len);
        for (std::size_t i = 0; i < len; ++i) {
          std::size_t index = 0;
          for (unsigned m : pick) index = index * n + list[m][i];
          t[i] = a.table(op)[index];
        }
        if (members.insert(t).second) list.push_back(std::move(t));
      });
    }
    fresh_from = end;
  }
  return members;
}

inline unsigned at3(const Table& t, std::size_t n, unsigned x, unsigned y, unsigned z) {
  return t[(x * n + y) * n + z];
}
inline unsigned at4(const Table& t, std::size_t n, unsigned x, unsigned y,
                    unsigned z, unsigned w) {
  return t[((x * n + y) * n + z) * n + w];
}

// Equations written out one by one from the definitions.
inline bool valid_sequence(std::size_t n, const std::vector<Table>& s,
                           malt::SequenceKind kind) {
  using K = malt::SequenceKind;
  const std::size_t len = s.size() - 1;
  if (kind == K::Day) {
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = 0; y < n; ++y)
        for (unsigned z = 0; z < n; ++z)
          for (unsigned w = 0; w < n; ++w) {
            if (at4(s[0], n, x, y, z, w) != x) return false;
            if (at4(s[len], n, x, y, z, w) != w) return false;
          }
    for (std::size_t i = 0; i <= len; ++i)
      for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
          if (at4(s[i], n, x, y, y, x) != x) return false;
        }
    for (std::size_t i = 0; i < len; ++i)
      for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
          for (unsigned w = 0; w < n; ++w) {
            if (i % 2 == 0 && at4(s[i], n, x, x, w, w) != at4(s[i + 1], n, x, x, w, w))
              return false;
            if (i % 2 == 1 && at4(s[i], n, x, y, y, w) != at4(s[i + 1], n, x, y, y, w))
              return false;
          }
    return true;
  }
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      for (unsigned z = 0; z < n; ++z) {
        if (at3(s[0], n, x, y, z) != x) return false;
        if (at3(s[len], n, x, y, z) != z) return false;
      }
  for (std::size_t h = 1; h < len; ++h) {
    if (kind == K::Gumm && h == 1) continue;
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = 0; y < n; ++y)
        if (at3(s[h], n, x, y, x) != x) return false;
  }
  for (std::size_t h = 0; h < len; ++h) {
    const bool even = h % 2 == 0;
    const bool xzz = kind == K::Jonsson ? !even : even;
    for (unsigned x = 0; x < n; ++x)
      for (unsigned z = 0; z < n; ++z) {
        if (xzz && at3(s[h], n, x, z, z) != at3(s[h + 1], n, x, z, z)) return false;
        if (!xzz && at3(s[h], n, x, x, z) != at3(s[h + 1], n, x, x, z)) return false;
      }
  }
  return true;
}

// Least n <= max_n with a valid sequence inside the clone, by trying every
// choice of intermediate members.
inline std::optional<std::size_t> level(const malt::FiniteAlgebra& a,
                                        const std::set<Table>& members_set,
                                        malt::SequenceKind kind,
                                        std::size_t max_n) {
  const std::size_t k = kind == malt::SequenceKind::Day ? 4 : 3;
  const std::vector<Table> members(members_set.begin(), members_set.end());
  const std::size_t n = a.size();
  std::size_t len = 1;
  for (std::size_t i = 0; i < k; ++i) len *= n;
  Table first(len), last(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t high = i;
    for (std::size_t j = 1; j < k; ++j) high /= n;
    first[i] = static_cast<unsigned>(high);
    last[i] = static_cast<unsigned>(i % n);
  }
  for (std::size_t steps = 0; steps <= max_n; ++steps) {
    if (steps == 0) {
      if (first == last) return 0;
      continue;
    }
    bool found = false;
    each_tuple(members.size(), steps - 1, [&](const std::vector<unsigned>& pick) {
      if (found) return;
      std::vector<Table> seq{first};
      for (unsigned m : pick) seq.push_back(members[m]);
      seq.push_back(last);
      if (valid_sequence(n, seq, kind)) found = true;
    });
    if (found) return steps;
  }
  return std::nullopt;
}

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

inline std::optional<std::size_t> level(const malt::FiniteAlgebra& a,
                                        malt::SequenceKind kind,
                                        std::size_t max_n) {
  return level(a, clone(a, kind == malt::SequenceKind::Day ? 4 : 3), kind, max_n);
}

// A random algebra with the given operation arities.
inline malt::FiniteAlgebra random_algebra(std::mt19937& rng, std::size_t size,
                                          const std::vector<std::size_t>& arities) {
  std::vector<malt::OperationSymbol> symbols;
  std::vector<std::vector<malt::Element>> tables;
  std::uniform_int_distribution<unsigned> pick(0, static_cast<unsigned>(size - 1));
  for (std::size_t i = 0; i < arities.size(); ++i) {
    symbols.push_back({"f" + std::to_string(i), arities[i]});
    std::size_t len = 1;
    for (std::size_t j = 0; j < arities[i]; ++j) len *= size;
    std::vector<malt::Element> t(len);
    for (auto& e : t) e = pick(rng);
    tables.push_back(std::move(t));
  }
  return malt::FiniteAlgebra("random", size, malt::Signature(std::move(symbols)),
                             std::move(tables));
}

inline Rel random_relation(std::mt19937& rng, unsigned n, double density) {
  std::bernoulli_distribution coin(density);
  Rel r;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if (coin(rng)) r.insert({a, b});
  return r;
}

}  // namespace oracle
