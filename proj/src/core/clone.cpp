#include "malt/clone.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "malt/budget.hpp"
#include "malt/error.hpp"
#include "malt/parallel.hpp"

namespace malt {

std::uint64_t hash_table(std::span<const Element> table) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ table.size();
  for (Element e : table) {
    h ^= e;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
  }
  h ^= h >> 32;
  h *= 0x94D049BB133111EBull;
  h ^= h >> 31;
  return h;
}

CloneSet::CloneSet(FiniteAlgebra algebra, std::size_t arity)
    : algebra_(std::move(algebra)),
      arity_(arity),
      length_(checked_power(algebra_.size(), arity)) {
  slots_.assign(64, 0);
}

TermOperation CloneSet::operation(std::size_t id) const {
  const auto t = table(id);
  return TermOperation{arity_, algebra_.size(), {t.begin(), t.end()}};
}

std::optional<std::size_t> CloneSet::find(std::span<const Element> table) const {
  if (table.size() != length_) return std::nullopt;
  return find(table, hash_table(table));
}

std::optional<std::size_t> CloneSet::find(std::span<const Element> table,
                                          std::uint64_t hash) const {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
    const std::uint32_t slot = slots_[i];
    if (slot == 0) return std::nullopt;
    const std::size_t id = slot - 1;
    if (hashes_[id] == hash &&
        std::equal(table.begin(), table.end(), arena_.begin() + id * length_)) {
      return id;
    }
  }
}

void CloneSet::grow_index() {
  std::vector<std::uint32_t> slots(slots_.size() * 2, 0);
  const std::size_t mask = slots.size() - 1;
  for (std::size_t id = 0; id < hashes_.size(); ++id) {
    std::size_t i = hashes_[id] & mask;
    while (slots[i] != 0) i = (i + 1) & mask;
    slots[i] = static_cast<std::uint32_t>(id + 1);
  }
  slots_ = std::move(slots);
}

bool CloneSet::insert(std::span<const Element> table, std::uint64_t hash,
                      Origin origin) {
  if (find(table, hash)) return false;
  if (origins_.size() + 1 >= std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetExceeded("clone has too many members");
  }
  require_budget(checked_product(arena_.size() + length_, sizeof(Element)),
                 "clone tables");
  const std::size_t id = origins_.size();
  arena_.insert(arena_.end(), table.begin(), table.end());
  origins_.push_back(std::move(origin));
  hashes_.push_back(hash);
  if (2 * hashes_.size() > slots_.size()) {
    grow_index();
  } else {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = hash & mask;
    while (slots_[i] != 0) i = (i + 1) & mask;
    slots_[i] = static_cast<std::uint32_t>(id + 1);
  }
  return true;
}

namespace {

// Number of functions A^k -> A, saturating.
std::size_t function_count(std::size_t n, std::size_t length) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (n != 0 && result > std::numeric_limits<std::size_t>::max() / n) {
      return std::numeric_limits<std::size_t>::max();
    }
    result *= n;
  }
  return result;
}

struct Candidate {
  std::size_t tuple;
  std::uint64_t hash;  // the bitmask table in the two-element fast path
};

constexpr std::size_t kSlicedMaxLength = 24;

constexpr std::size_t kBlock = std::size_t{1} << 15;
// Below this many tuples a block runs on the calling thread.
constexpr std::size_t kParallelMin = 4096;

}  // namespace

CloneSet generate_clone(const FiniteAlgebra& algebra, std::size_t arity,
                        std::size_t cap) {
  if (arity == 0) throw ArgumentError("clone arity must be positive");
  CloneSet clone(algebra, arity);
  const std::size_t n = algebra.size();
  const std::size_t length = clone.table_length();
  const std::size_t full = function_count(n, length);
  if (cap < 1) throw ArgumentError("clone cap must be positive");

  for (std::size_t i = 0; i < arity; ++i) {
    auto p = TermOperation::projection(n, arity, i);
    const auto h = hash_table(p.table);
    if (auto existing = clone.find(p.table, h)) {
      clone.projections_.push_back(*existing);
      continue;
    }
    if (clone.size() >= cap) {
      throw ArgumentError("clone cap is smaller than the number of projections");
    }
    Origin o;
    o.projection = i;
    clone.insert(p.table, h, std::move(o));
    clone.projections_.push_back(clone.size() - 1);
  }

  bool stop = clone.size() >= full;
  std::vector<Element> scratch(length);
  // Two-element algebras with short tables use bitmask tables: composition
  // is bitwise over the minterms where the operation is 1, and membership
  // is a bitmap over all 2^length functions.
  const bool sliced = n == 2 && length <= kSlicedMaxLength;
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> seen;
  if (sliced) seen.assign(((std::size_t{1} << length) + 63) / 64, 0);
  std::vector<std::vector<Candidate>> found;
  std::vector<std::vector<Element>> found_tables;

  // Returns false when generation must stop (cap or every function found).
  auto offer = [&](std::span<const Element> table, std::uint64_t h,
                   std::size_t op, std::span<const std::uint32_t> args) {
    if (clone.find(table, h)) return true;
    if (clone.size() >= cap) {
      clone.complete_ = false;
      return false;
    }
    Origin o;
    o.symbol = op;
    o.args.assign(args.begin(), args.end());
    clone.insert(table, h, std::move(o));
    if (sliced) {
      std::uint64_t mask = 0;
      for (std::size_t t = 0; t < length; ++t) {
        mask |= std::uint64_t{table[t]} << t;
      }
      masks.push_back(mask);
      seen[mask >> 6] |= std::uint64_t{1} << (mask & 63);
    }
    return clone.size() < full;
  };
  if (sliced) {
    for (std::size_t id = 0; id < clone.size(); ++id) {
      std::uint64_t mask = 0;
      for (std::size_t t = 0; t < length; ++t) {
        mask |= std::uint64_t{clone.table(id)[t]} << t;
      }
      masks.push_back(mask);
      seen[mask >> 6] |= std::uint64_t{1} << (mask & 63);
    }
  }

  for (std::size_t op = 0; op < algebra.operation_count() && !stop; ++op) {
    if (algebra.signature()[op].arity != 0) continue;
    std::fill(scratch.begin(), scratch.end(), algebra.table(op)[0]);
    stop = !offer(scratch, hash_table(scratch), op, {});
  }

  // Tuples whose largest entry is `pivot`, grouped by the first position
  // holding the pivot: entries before it are below the pivot, entries after
  // it are at most the pivot. Lexicographic within a group.
  auto decode = [](std::size_t q, std::size_t pivot, std::size_t r,
                   std::size_t first, std::uint32_t* digits) {
    for (std::size_t j = r; j-- > first + 1;) {
      digits[j] = static_cast<std::uint32_t>(q % (pivot + 1));
      q /= pivot + 1;
    }
    digits[first] = static_cast<std::uint32_t>(pivot);
    for (std::size_t j = first; j-- > 0;) {
      digits[j] = static_cast<std::uint32_t>(q % pivot);
      q /= pivot;
    }
  };

  auto advance = [](std::size_t pivot, std::size_t r, std::size_t first,
                    std::uint32_t* digits) {
    for (std::size_t j = r; j-- > 0;) {
      if (j == first) continue;
      const std::size_t radix = j > first ? pivot + 1 : pivot;
      if (++digits[j] < radix) return;
      digits[j] = 0;
    }
  };

  for (std::size_t pivot = 0; pivot < clone.size() && !stop; ++pivot) {
    for (std::size_t op = 0; op < algebra.operation_count() && !stop; ++op) {
      const std::size_t r = algebra.signature()[op].arity;
      if (r == 0) continue;
      const auto optable = algebra.table(op);
      std::vector<std::size_t> ones;  // minterms where the operation is 1
      for (std::size_t m = 0; m < optable.size(); ++m) {
        if (optable[m] == 1) ones.push_back(m);
      }
      const std::uint64_t all =
          length == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
      // f(b, a) adds nothing over f(a, b) for a commutative f.
      bool commutative = r == 2;
      for (std::size_t a = 0; a < n && commutative; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          if (optable[a * n + b] != optable[b * n + a]) {
            commutative = false;
            break;
          }
        }
      }
      const std::size_t segments = commutative ? 1 : r;
      // Coefficients of the four binary minterms, all ones or zero.
      std::uint64_t c00 = 0, c01 = 0, c10 = 0, c11 = 0;
      if (sliced && r == 2) {
        c00 = optable[0] ? all : 0;
        c01 = optable[1] ? all : 0;
        c10 = optable[2] ? all : 0;
        c11 = optable[3] ? all : 0;
      }
      for (std::size_t first = 0; first < segments && !stop; ++first) {
        const std::size_t total = checked_product(
            checked_power(pivot, first), checked_power(pivot + 1, r - 1 - first));
        for (std::size_t block = 0; block < total && !stop; block += kBlock) {
          const std::size_t count = std::min(kBlock, total - block);
          const std::size_t chunks = count < kParallelMin ? 1 : chunk_count(count);
          found.assign(chunks, {});
          found_tables.assign(chunks, {});
          auto work = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            std::vector<std::uint32_t> digits(r);
            std::vector<Element> candidate(length);
            auto& out = found[chunk];
            auto& out_tables = found_tables[chunk];
            if (begin < end) decode(block + begin, pivot, r, first, digits.data());
            if (sliced && r == 2) {
              // Tuples are (pivot, q) or (q, pivot).
              const std::uint64_t p = masks[pivot];
              for (std::size_t q = block + begin; q < block + end; ++q) {
                const std::uint64_t a = first == 0 ? p : masks[q];
                const std::uint64_t b = first == 0 ? masks[q] : p;
                const std::uint64_t result = (~a & ~b & c00) | (~a & b & c01) |
                                             (a & ~b & c10) | (a & b & c11);
                if ((seen[result >> 6] >> (result & 63)) & 1) continue;
                out.push_back({q, result});
              }
              return;
            }
            if (sliced) {
              for (std::size_t q = block + begin; q < block + end;
                   ++q, advance(pivot, r, first, digits.data())) {
                std::uint64_t result = 0;
                for (std::size_t m : ones) {
                  std::uint64_t term = all;
                  for (std::size_t j = 0; j < r; ++j) {
                    const std::uint64_t a = masks[digits[j]];
                    term &= (m >> (r - 1 - j)) & 1 ? a : ~a;
                  }
                  result |= term;
                }
                if ((seen[result >> 6] >> (result & 63)) & 1) continue;
                out.push_back({q, result});
              }
              return;
            }
            for (std::size_t q = block + begin; q < block + end;
                 ++q, advance(pivot, r, first, digits.data())) {
              for (std::size_t t = 0; t < length; ++t) {
                std::size_t index = 0;
                for (std::size_t j = 0; j < r; ++j) {
                  index = index * n + clone.arena_[digits[j] * length + t];
                }
                candidate[t] = optable[index];
              }
              const auto h = hash_table(candidate);
              if (clone.find(candidate, h)) continue;
              out.push_back({q, h});
              out_tables.insert(out_tables.end(), candidate.begin(),
                                candidate.end());
            }
          };
          if (chunks == 1) {
            work(0, 0, count);
          } else {
            parallel_chunks(count, work);
          }
          std::vector<std::uint32_t> digits(r);
          for (std::size_t c = 0; c < chunks && !stop; ++c) {
            for (std::size_t i = 0; i < found[c].size(); ++i) {
              decode(found[c][i].tuple, pivot, r, first, digits.data());
              std::span<const Element> table;
              std::uint64_t h = found[c][i].hash;
              if (sliced) {
                for (std::size_t t = 0; t < length; ++t) {
                  scratch[t] = static_cast<Element>((h >> t) & 1);
                }
                table = scratch;
                h = hash_table(scratch);
              } else {
                table = {found_tables[c].data() + i * length, length};
              }
              if (!offer(table, h, op, digits)) {
                stop = true;
                break;
              }
            }
          }
        }
      }
    }
  }
  return clone;
}

namespace {

Term rebuild(const CloneSet& clone, std::size_t id) {
  const Origin& o = clone.origin(id);
  if (o.symbol == Origin::kProjection) return Term::variable(o.projection);
  std::vector<Term> args;
  args.reserve(o.args.size());
  for (auto a : o.args) args.push_back(rebuild(clone, a));
  return Term::apply(clone.algebra().signature()[o.symbol].name, std::move(args));
}

}  // namespace

Term reconstruct_term(const CloneSet& clone, std::size_t id) {
  if (id >= clone.size()) throw ArgumentError("clone member id out of range");
  return rebuild(clone, id).with_arity(clone.arity());
}

Term reconstruct_term(const CloneSet& clone, const TermOperation& op) {
  auto id = clone.find(op.table);
  if (!id || op.arity != clone.arity()) {
    throw ArgumentError("operation is not a member of the clone");
  }
  return reconstruct_term(clone, *id);
}

FreeAlgebra free_algebra(const CloneSet& clone) {
  if (!clone.complete()) {
    throw BudgetExceeded("clone generation hit its cap; free algebra unavailable");
  }
  const FiniteAlgebra& base = clone.algebra();
  const std::size_t m = clone.size();
  const std::size_t n = base.size();
  const std::size_t length = clone.table_length();
  std::size_t bytes = 0;
  for (const auto& s : base.signature().symbols()) {
    bytes += checked_product(checked_power(m, s.arity), sizeof(Element));
  }
  require_budget(bytes, "free algebra tables");

  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < base.operation_count(); ++op) {
    const std::size_t r = base.signature()[op].arity;
    const auto optable = base.table(op);
    std::vector<Element> table(checked_power(m, r));
    const std::size_t chunks = chunk_count(table.size());
    std::vector<std::size_t> missing(chunks, 0);
    parallel_chunks(table.size(), [&](std::size_t chunk, std::size_t begin,
                                      std::size_t end) {
      std::vector<std::size_t> digits(r);
      std::vector<Element> composed(length);
      for (std::size_t q = begin; q < end; ++q) {
        std::size_t rest = q;
        for (std::size_t j = r; j-- > 0;) {
          digits[j] = rest % m;
          rest /= m;
        }
        for (std::size_t t = 0; t < length; ++t) {
          std::size_t index = 0;
          for (std::size_t j = 0; j < r; ++j) {
            index = index * n + clone.table(digits[j])[t];
          }
          composed[t] = optable[index];
        }
        auto id = clone.find(composed);
        if (!id) {
          ++missing[chunk];
          continue;
        }
        table[q] = static_cast<Element>(*id);
      }
    });
    for (auto miss : missing) {
      if (miss) throw ArgumentError("clone is not closed under its operations");
    }
    tables.push_back(std::move(table));
  }
  FreeAlgebra out{
      FiniteAlgebra("F_" + base.name() + "(" + std::to_string(clone.arity()) + ")",
                    m, base.signature(), std::move(tables)),
      {},
      true};
  for (std::size_t i = 0; i < clone.arity(); ++i) {
    out.generators.push_back(static_cast<Element>(clone.projection_id(i)));
  }
  return out;
}

FreeAlgebra free_algebra(const FiniteAlgebra& algebra, std::size_t arity,
                         std::size_t cap) {
  return free_algebra(generate_clone(algebra, arity, cap));
}

namespace {

enum class Slice { XZZ, XXZ, XXWW, XYYW };

Slice slice_for(SequenceKind kind, std::size_t h) {
  const bool even = h % 2 == 0;
  switch (kind) {
    case SequenceKind::Alvin:
    case SequenceKind::Gumm:
      return even ? Slice::XZZ : Slice::XXZ;
    case SequenceKind::Jonsson:
      return even ? Slice::XXZ : Slice::XZZ;
    case SequenceKind::Day:
      return even ? Slice::XXWW : Slice::XYYW;
  }
  return Slice::XZZ;
}

// Positions of the table read by a slice, in a fixed order.
std::vector<std::size_t> slice_points(Slice slice, std::size_t n) {
  std::vector<std::size_t> points;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      switch (slice) {
        case Slice::XZZ: points.push_back((a * n + b) * n + b); break;
        case Slice::XXZ: points.push_back((a * n + a) * n + b); break;
        case Slice::XXWW: points.push_back(((a * n + a) * n + b) * n + b); break;
        case Slice::XYYW:
          for (std::size_t c = 0; c < n; ++c) {
            points.push_back(((a * n + b) * n + b) * n + c);
          }
          break;
      }
    }
  }
  return points;
}

struct VectorHash {
  std::size_t operator()(const std::vector<Element>& v) const {
    return static_cast<std::size_t>(hash_table(v));
  }
};

// Group id of every member under one slice: equal ids iff equal slices.
std::vector<std::uint32_t> slice_groups(const CloneSet& clone, Slice slice) {
  const auto points = slice_points(slice, clone.algebra().size());
  std::unordered_map<std::vector<Element>, std::uint32_t, VectorHash> ids;
  std::vector<std::uint32_t> groups(clone.size());
  std::vector<Element> key(points.size());
  for (std::size_t id = 0; id < clone.size(); ++id) {
    const auto t = clone.table(id);
    for (std::size_t i = 0; i < points.size(); ++i) key[i] = t[points[i]];
    auto [it, inserted] =
        ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
    groups[id] = it->second;
  }
  return groups;
}

// t(x,y,x) = x, or m(x,y,y,x) = x for Day.
std::vector<char> middle_holds(const CloneSet& clone, bool day) {
  const std::size_t n = clone.algebra().size();
  std::vector<char> ok(clone.size(), 1);
  for (std::size_t id = 0; id < clone.size(); ++id) {
    const auto t = clone.table(id);
    for (std::size_t x = 0; x < n && ok[id]; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t i = day ? ((x * n + y) * n + y) * n + x
                                  : (x * n + y) * n + x;
        if (t[i] != x) {
          ok[id] = 0;
          break;
        }
      }
    }
  }
  return ok;
}

}  // namespace

LevelReport level(const CloneSet& clone, SequenceKind kind, std::size_t cap_n) {
  if (clone.arity() != kind_arity(kind)) {
    throw ArgumentError("clone arity does not match the sequence kind");
  }
  LevelReport report;
  report.kind = kind;
  report.cap_n = cap_n;
  report.clone_size = clone.size();
  report.clone_complete = clone.complete();

  const std::size_t members = clone.size();
  const std::size_t source = clone.projection_id(0);
  const std::size_t target = clone.projection_id(clone.arity() - 1);
  auto finish = [&](std::vector<std::size_t> path) {
    report.level = path.size() - 1;
    report.status =
        clone.complete() ? LevelStatus::Found : LevelStatus::PartialClone;
    for (auto id : path) {
      report.witness.push_back(clone.operation(id));
      report.witness_terms.push_back(reconstruct_term(clone, id));
    }
    report.witness_ids = std::move(path);
    return report;
  };
  if (source == target) return finish({source});

  const bool day = kind == SequenceKind::Day;
  const auto middle = middle_holds(clone, day);
  const Slice first = slice_for(kind, 0);
  const Slice second = slice_for(kind, 1);
  const auto groups_first = slice_groups(clone, first);
  const auto groups_second = slice_groups(clone, second);
  auto groups_at = [&](std::size_t h) -> const std::vector<std::uint32_t>& {
    return h % 2 == 0 ? groups_first : groups_second;
  };
  auto admissible = [&](std::size_t position, std::size_t id) {
    if (kind == SequenceKind::Gumm && position == 1) return true;
    return middle[id] != 0;
  };

  // layers[h] marks members that can sit at position h of a sequence
  // starting at the first projection.
  std::vector<std::vector<char>> layers(1, std::vector<char>(members, 0));
  layers[0][source] = 1;
  std::optional<std::size_t> length;
  for (std::size_t h = 0; h < cap_n; ++h) {
    const auto& groups = groups_at(h);
    std::vector<char> reached(members, 0);
    for (std::size_t id = 0; id < members; ++id) {
      if (layers[h][id]) reached[groups[id]] = 1;
    }
    std::vector<char> next(members, 0);
    bool any = false;
    for (std::size_t id = 0; id < members; ++id) {
      if (reached[groups[id]] && admissible(h + 1, id)) {
        next[id] = 1;
        any = true;
      }
    }
    layers.push_back(std::move(next));
    if (layers.back()[target]) {
      length = h + 1;
      break;
    }
    if (!any) break;
  }
  if (!length) {
    report.status = clone.complete() ? LevelStatus::NoneUpToCap
                                     : LevelStatus::PartialClone;
    return report;
  }

  // Keep only members that still reach the target, then walk forward
  // taking the least id at each step.
  const std::size_t steps = *length;
  std::vector<std::vector<char>> alive(steps + 1, std::vector<char>(members, 0));
  alive[steps][target] = 1;
  for (std::size_t h = steps; h-- > 0;) {
    const auto& groups = groups_at(h);
    std::vector<char> reached(members, 0);
    for (std::size_t id = 0; id < members; ++id) {
      if (alive[h + 1][id]) reached[groups[id]] = 1;
    }
    for (std::size_t id = 0; id < members; ++id) {
      alive[h][id] = layers[h][id] && reached[groups[id]];
    }
  }
  std::vector<std::size_t> path{source};
  for (std::size_t h = 0; h < steps; ++h) {
    const auto& groups = groups_at(h);
    const auto group = groups[path.back()];
    for (std::size_t id = 0; id < members; ++id) {
      if (alive[h + 1][id] && groups[id] == group) {
        path.push_back(id);
        break;
      }
    }
  }
  return finish(std::move(path));
}

LevelReport level(const FiniteAlgebra& algebra, SequenceKind kind,
                  const LevelOptions& options) {
  if (kind == SequenceKind::Day && algebra.size() > 2 &&
      !options.allow_large_day) {
    throw ArgumentError(
        "Day levels on algebras with more than 2 elements need "
        "allow_large_day");
  }
  const auto clone =
      generate_clone(algebra, kind_arity(kind), options.cap_clone);
  return level(clone, kind, options.cap_n);
}

}  // namespace malt
