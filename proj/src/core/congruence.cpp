#include "malt/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "malt/budget.hpp"
#include "malt/error.hpp"
#include "union_find.hpp"

namespace malt {

namespace {

void require_same_size(const FiniteAlgebra& algebra, const BinaryRelation& r) {
  if (r.size() != algebra.size()) {
    throw ArgumentError("relation of size " + std::to_string(r.size()) +
                        " on algebra of size " + std::to_string(algebra.size()));
  }
}

// Calls visit(lhs, rhs) for every operation applied to a tuple of pairs of
// `pairs`; stops early when visit returns false.
template <class Visit>
bool for_each_image(const FiniteAlgebra& algebra, std::span<const Pair> pairs,
                    Visit&& visit) {
  std::vector<std::size_t> odometer;
  std::vector<Element> left;
  std::vector<Element> right;
  for (std::size_t op = 0; op < algebra.operation_count(); ++op) {
    const std::size_t arity = algebra.signature()[op].arity;
    if (arity == 0) {
      const Element c = algebra.table(op)[0];
      if (!visit(c, c)) return false;
      continue;
    }
    if (pairs.empty()) continue;
    odometer.assign(arity, 0);
    left.assign(arity, 0);
    right.assign(arity, 0);
    while (true) {
      for (std::size_t j = 0; j < arity; ++j) {
        left[j] = pairs[odometer[j]].first;
        right[j] = pairs[odometer[j]].second;
      }
      if (!visit(algebra.apply(op, left), algebra.apply(op, right))) return false;
      std::size_t j = arity;
      while (j > 0 && ++odometer[j - 1] == pairs.size()) odometer[--j] = 0;
      if (j == 0) break;
    }
  }
  return true;
}

std::vector<Element> canonical_labels(std::span<const Element> raw) {
  std::map<Element, Element> renumber;
  std::vector<Element> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, inserted] =
        renumber.emplace(raw[i], static_cast<Element>(renumber.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

bool is_compatible(const FiniteAlgebra& algebra, const BinaryRelation& r) {
  require_same_size(algebra, r);
  const auto pairs = r.pairs();
  return for_each_image(algebra, pairs, [&](Element a, Element b) {
    return r.contains(a, b);
  });
}

BinaryRelation compatible_closure(const FiniteAlgebra& algebra,
                                  BinaryRelation r) {
  require_same_size(algebra, r);
  // Fixpoint: apply every operation to every tuple of current pairs until a
  // full pass adds nothing.
  while (true) {
    const auto pairs = r.pairs();
    BinaryRelation next = r;
    for_each_image(algebra, pairs, [&](Element a, Element b) {
      next.insert(a, b);
      return true;
    });
    if (next == r) return r;
    r = std::move(next);
  }
}

Tolerance::Tolerance(const FiniteAlgebra& algebra, BinaryRelation r)
    : relation_(std::move(r)) {
  require_same_size(algebra, relation_);
  if (!relation_.is_reflexive()) throw ValidationError("tolerance is not reflexive");
  if (!relation_.is_symmetric()) throw ValidationError("tolerance is not symmetric");
  if (!is_compatible(algebra, relation_)) {
    throw ValidationError("tolerance is not compatible");
  }
}

Congruence::Congruence(std::vector<Element> canonical_labels)
    : labels_(std::move(canonical_labels)) {
  std::vector<std::size_t> sizes;
  for (Element l : labels_) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  block_count_ = sizes.size();
  for (auto s : sizes) pair_count_ += s * s;
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Element>(i);
  return Congruence(std::move(labels));
}

Congruence Congruence::full(std::size_t n) {
  return Congruence(std::vector<Element>(n, 0));
}

Congruence Congruence::from_labels(std::span<const Element> labels) {
  return Congruence(canonical_labels(labels));
}

Congruence Congruence::from_relation(const FiniteAlgebra& algebra,
                                     const BinaryRelation& r) {
  require_same_size(algebra, r);
  if (!r.is_reflexive() || !r.is_symmetric() || !r.is_transitive()) {
    throw ValidationError("relation is not an equivalence relation");
  }
  if (!is_compatible(algebra, r)) {
    throw ValidationError("relation is not compatible");
  }
  // Label each element by the least member of its block.
  std::vector<Element> labels(r.size());
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      if (r.contains(static_cast<Element>(a), static_cast<Element>(b))) {
        labels[a] = static_cast<Element>(b);
        break;
      }
    }
  }
  return from_labels(labels);
}

std::vector<std::vector<Element>> Congruence::blocks() const {
  std::vector<std::vector<Element>> out(block_count_);
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    out[labels_[a]].push_back(static_cast<Element>(a));
  }
  return out;
}

BinaryRelation Congruence::relation() const {
  BinaryRelation r(labels_.size());
  for (const auto& block : blocks()) {
    for (Element a : block) {
      for (Element b : block) r.insert(a, b);
    }
  }
  return r;
}

std::strong_ordering Congruence::operator<=>(const Congruence& other) const {
  if (auto c = pair_count_ <=> other.pair_count_; c != 0) return c;
  return labels_ <=> other.labels_;
}

std::string to_string(const Congruence& c) {
  std::string out = "{";
  const auto blocks = c.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += ',';
    out += '{';
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(blocks[i][j]);
    }
    out += '}';
  }
  out += '}';
  return out;
}

Tolerance tolerance_generated(const FiniteAlgebra& algebra,
                              std::span<const Pair> pairs) {
  const std::size_t n = algebra.size();
  BinaryRelation r = BinaryRelation::identity(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw ArgumentError("pair outside the universe");
    r.insert(a, b);
    r.insert(b, a);
  }
  while (true) {
    r = compatible_closure(algebra, std::move(r));
    BinaryRelation sym = unite(r, converse(r));
    if (sym == r) break;
    r = std::move(sym);
  }
  return Tolerance(Tolerance::Unchecked{}, std::move(r));
}

Congruence congruence_generated(const FiniteAlgebra& algebra,
                                std::span<const Pair> pairs) {
  // Union-find closed under basic translations: every merged pair (a,b) is
  // pushed through f(c_1, .., a, .., c_r) vs f(c_1, .., b, .., c_r).
  const std::size_t n = algebra.size();
  detail::UnionFind uf(n);
  std::deque<Pair> queue;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw ArgumentError("pair outside the universe");
    if (uf.unite(a, b)) queue.emplace_back(a, b);
  }
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (std::size_t op = 0; op < algebra.operation_count(); ++op) {
      const std::size_t arity = algebra.signature()[op].arity;
      if (arity == 0) continue;
      const auto table = algebra.table(op);
      const std::size_t others = checked_power(n, arity - 1);
      for (std::size_t pos = 0; pos < arity; ++pos) {
        const std::size_t stride = checked_power(n, arity - 1 - pos);
        for (std::size_t o = 0; o < others; ++o) {
          const std::size_t high = o / stride;
          const std::size_t low = o % stride;
          const std::size_t base = high * stride * n + low;
          const Element u = table[base + a * stride];
          const Element v = table[base + b * stride];
          if (uf.unite(u, v)) queue.emplace_back(u, v);
        }
      }
    }
  }
  return Congruence::from_labels(uf.labels());
}

Congruence join_congruences(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw ArgumentError("congruence size mismatch");
  detail::UnionFind uf(a.size());
  std::vector<Element> first_a(a.block_count(), static_cast<Element>(-1));
  std::vector<Element> first_b(b.block_count(), static_cast<Element>(-1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto e = static_cast<Element>(i);
    auto& fa = first_a[a.labels()[i]];
    if (fa == static_cast<Element>(-1)) fa = e; else uf.unite(fa, e);
    auto& fb = first_b[b.labels()[i]];
    if (fb == static_cast<Element>(-1)) fb = e; else uf.unite(fb, e);
  }
  return Congruence::from_labels(uf.labels());
}

Congruence meet_congruences(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw ArgumentError("congruence size mismatch");
  std::map<std::pair<Element, Element>, Element> ids;
  std::vector<Element> labels(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it, inserted] = ids.emplace(std::pair{a.labels()[i], b.labels()[i]},
                                      static_cast<Element>(ids.size()));
    labels[i] = it->second;
  }
  return Congruence::from_labels(labels);
}

CongruenceLattice::CongruenceLattice(std::vector<Congruence> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ArgumentError("empty congruence lattice");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const std::size_t m = members_.size();
  require_budget(checked_product(checked_product(m, m), 2 * sizeof(std::size_t)),
                 "congruence lattice tables");
  relations_.reserve(m);
  for (const auto& c : members_) relations_.push_back(c.relation());
  meet_.resize(m * m);
  join_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      auto mi = index_of(meet_congruences(members_[i], members_[j]));
      auto ji = index_of(join_congruences(members_[i], members_[j]));
      if (!mi || !ji) throw ArgumentError("congruences are not closed under meet and join");
      meet_[i * m + j] = meet_[j * m + i] = *mi;
      join_[i * m + j] = join_[j * m + i] = *ji;
    }
  }
}

std::optional<std::size_t> CongruenceLattice::index_of(
    const Congruence& c) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), c);
  if (it == members_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

CongruenceLattice all_congruences(const FiniteAlgebra& algebra,
                                  std::size_t max_members) {
  const std::size_t n = algebra.size();
  std::set<Congruence> found;
  found.insert(Congruence::identity(n));
  std::vector<Congruence> order;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Pair p{static_cast<Element>(a), static_cast<Element>(b)};
      auto c = congruence_generated(algebra, std::span(&p, 1));
      if (found.insert(c).second) order.push_back(std::move(c));
    }
  }
  // Join closure: every new member is joined with everything found so far.
  std::vector<Congruence> all(found.begin(), found.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto c = join_congruences(all[i], all[j]);
      if (found.insert(c).second) {
        all.push_back(std::move(c));
        if (all.size() > max_members) {
          throw BudgetExceeded("more than " + std::to_string(max_members) +
                               " congruences");
        }
      }
    }
  }
  return CongruenceLattice(std::vector<Congruence>(found.begin(), found.end()));
}

LawCheck check_modular(const CongruenceLattice& l) {
  const std::size_t m = l.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        if (!l.leq(x, z)) continue;
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) {
          return {false, std::array{x, y, z}};
        }
      }
    }
  }
  return {};
}

LawCheck check_distributive(const CongruenceLattice& l) {
  const std::size_t m = l.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) {
          return {false, std::array{x, y, z}};
        }
      }
    }
  }
  return {};
}

namespace {

std::vector<Pair> off_diagonal_pairs(std::size_t n, bool ordered) {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = ordered ? 0 : a + 1; b < n; ++b) {
      if (a != b) out.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    }
  }
  return out;
}

bool tolerance_less(const Tolerance& a, const Tolerance& b) {
  const auto ca = a.relation().count();
  const auto cb = b.relation().count();
  if (ca != cb) return ca < cb;
  return a.relation() < b.relation();
}

}  // namespace

std::vector<Tolerance> all_tolerances(const FiniteAlgebra& algebra) {
  const std::size_t n = algebra.size();
  std::vector<Tolerance> out;
  const auto pairs = off_diagonal_pairs(n, false);
  if (n <= 5) {
    const std::size_t total = std::size_t{1} << pairs.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
      BinaryRelation r = BinaryRelation::identity(n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1u) {
          r.insert(pairs[i].first, pairs[i].second);
          r.insert(pairs[i].second, pairs[i].first);
        }
      }
      if (is_compatible(algebra, r)) {
        out.push_back(Tolerance(Tolerance::Unchecked{}, std::move(r)));
      }
    }
  } else {
    std::set<BinaryRelation> seen;
    auto add = [&](std::span<const Pair> seeds) {
      Tolerance t = tolerance_generated(algebra, seeds);
      if (seen.insert(t.relation()).second) out.push_back(std::move(t));
    };
    add({});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      add(std::span(&pairs[i], 1));
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const Pair two[] = {pairs[i], pairs[j]};
        add(two);
      }
    }
  }
  std::sort(out.begin(), out.end(), tolerance_less);
  return out;
}

std::vector<BinaryRelation> reflexive_compatible_relations(
    const FiniteAlgebra& algebra, std::size_t max_seeds) {
  const std::size_t n = algebra.size();
  const auto pairs = off_diagonal_pairs(n, true);
  std::set<BinaryRelation> seen;
  std::vector<BinaryRelation> out;
  std::vector<std::size_t> chosen;
  auto emit = [&] {
    BinaryRelation r = BinaryRelation::identity(n);
    for (auto i : chosen) r.insert(pairs[i].first, pairs[i].second);
    r = compatible_closure(algebra, std::move(r));
    if (seen.insert(r).second) out.push_back(std::move(r));
  };
  // Subsets of size <= max_seeds in lexicographic order.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    emit();
    if (chosen.size() == max_seeds) return;
    for (std::size_t i = start; i < pairs.size(); ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end(), [](const BinaryRelation& a, const BinaryRelation& b) {
    const auto ca = a.count();
    const auto cb = b.count();
    if (ca != cb) return ca < cb;
    return a < b;
  });
  return out;
}

}  // namespace malt
