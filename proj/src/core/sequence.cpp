#include "malt/sequence.hpp"

#include "malt/error.hpp"

namespace malt {

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Jonsson: return "jonsson";
    case SequenceKind::Alvin: return "alvin";
    case SequenceKind::Gumm: return "gumm";
    case SequenceKind::Day: return "day";
  }
  return "?";
}

std::optional<SequenceKind> parse_kind(std::string_view name) {
  if (name == "jonsson") return SequenceKind::Jonsson;
  if (name == "alvin") return SequenceKind::Alvin;
  if (name == "gumm") return SequenceKind::Gumm;
  if (name == "day") return SequenceKind::Day;
  return std::nullopt;
}

std::size_t kind_arity(SequenceKind kind) {
  return kind == SequenceKind::Day ? 4 : 3;
}

void ValidityReport::add(Violation v) {
  ++violation_count;
  if (violations.size() < kMaxRecorded) violations.push_back(std::move(v));
}

void ValidityReport::merge(const ValidityReport& other) {
  for (const auto& v : other.violations) {
    if (violations.size() < kMaxRecorded) violations.push_back(v);
  }
  violation_count += other.violation_count;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

namespace {

void require_shape(const FiniteAlgebra& algebra,
                   std::span<const TermOperation> sequence, std::size_t arity) {
  if (sequence.empty()) throw ArgumentError("empty sequence");
  for (std::size_t h = 0; h < sequence.size(); ++h) {
    const auto& t = sequence[h];
    if (t.arity != arity) {
      throw ArgumentError("term " + std::to_string(h) + " has arity " +
                          std::to_string(t.arity) + ", expected " +
                          std::to_string(arity));
    }
    if (t.size != algebra.size()) {
      throw ArgumentError("term " + std::to_string(h) + " is over a set of size " +
                          std::to_string(t.size) + ", algebra has size " +
                          std::to_string(algebra.size()));
    }
  }
}

void require_ternary(const TermOperation& s) {
  if (s.arity != 3) throw ArgumentError("expected a ternary operation");
}

// Slice equations compare t_h and t_{h+1} on (x,z,z) or (x,x,z).
enum class Slice { XZZ, XXZ };

Slice slice_for(SequenceKind kind, std::size_t h) {
  const bool even = h % 2 == 0;
  if (kind == SequenceKind::Jonsson) return even ? Slice::XXZ : Slice::XZZ;
  return even ? Slice::XZZ : Slice::XXZ;
}

ValidityReport check_ternary(std::span<const TermOperation> seq,
                             SequenceKind kind, std::size_t size) {
  ValidityReport report;
  const std::size_t n = seq.size() - 1;
  const auto N = static_cast<Element>(size);
  const auto& first = seq.front();
  const auto& last = seq.back();
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      for (Element z = 0; z < N; ++z) {
        const Element v = first.at(x, y, z);
        if (v != x) report.add({"A2", 0, {x, y, z}, v, x});
      }
  for (std::size_t h = 0; h < n; ++h) {
    const bool middle = h > 0;
    const bool exempt = kind == SequenceKind::Gumm && h == 1;
    if (middle && !exempt) {
      const char* tag = kind == SequenceKind::Gumm ? "G1" : "A1";
      for (Element x = 0; x < N; ++x)
        for (Element y = 0; y < N; ++y) {
          const Element v = seq[h].at(x, y, x);
          if (v != x) report.add({tag, h, {x, y, x}, v, x});
        }
    }
    const Slice slice = slice_for(kind, h);
    for (Element x = 0; x < N; ++x)
      for (Element z = 0; z < N; ++z) {
        const Element y = slice == Slice::XZZ ? z : x;
        const Element lhs = seq[h].at(x, y, z);
        const Element rhs = seq[h + 1].at(x, y, z);
        if (lhs != rhs) {
          report.add({slice == Slice::XZZ ? "A3" : "A4", h, {x, y, z}, lhs, rhs});
        }
      }
  }
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      for (Element z = 0; z < N; ++z) {
        const Element v = last.at(x, y, z);
        if (v != z) report.add({"A5", n, {x, y, z}, v, z});
      }
  return report;
}

ValidityReport check_day(std::span<const TermOperation> seq, std::size_t size) {
  ValidityReport report;
  const std::size_t r = seq.size() - 1;
  const auto N = static_cast<Element>(size);
  auto at = [&](const TermOperation& m, Element x, Element y, Element z, Element w) {
    const Element args[] = {x, y, z, w};
    return m(args);
  };
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      for (Element z = 0; z < N; ++z)
        for (Element w = 0; w < N; ++w) {
          const Element v = at(seq.front(), x, y, z, w);
          if (v != x) report.add({"D1", 0, {x, y, z, w}, v, x});
        }
  for (std::size_t i = 0; i <= r; ++i) {
    for (Element x = 0; x < N; ++x)
      for (Element y = 0; y < N; ++y) {
        const Element v = at(seq[i], x, y, y, x);
        if (v != x) report.add({"D3", i, {x, y, y, x}, v, x});
      }
    if (i == r) break;
    if (i % 2 == 0) {
      for (Element x = 0; x < N; ++x)
        for (Element w = 0; w < N; ++w) {
          const Element lhs = at(seq[i], x, x, w, w);
          const Element rhs = at(seq[i + 1], x, x, w, w);
          if (lhs != rhs) report.add({"D4", i, {x, x, w, w}, lhs, rhs});
        }
    } else {
      for (Element x = 0; x < N; ++x)
        for (Element y = 0; y < N; ++y)
          for (Element w = 0; w < N; ++w) {
            const Element lhs = at(seq[i], x, y, y, w);
            const Element rhs = at(seq[i + 1], x, y, y, w);
            if (lhs != rhs) report.add({"D5", i, {x, y, y, w}, lhs, rhs});
          }
    }
  }
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      for (Element z = 0; z < N; ++z)
        for (Element w = 0; w < N; ++w) {
          const Element v = at(seq.back(), x, y, z, w);
          if (v != w) report.add({"D2", r, {x, y, z, w}, v, w});
        }
  return report;
}

}  // namespace

ValidityReport check_sequence(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind) {
  require_shape(algebra, sequence, kind_arity(kind));
  ValidityReport report = kind == SequenceKind::Day
                              ? check_day(sequence, algebra.size())
                              : check_ternary(sequence, kind, algebra.size());
  if (sequence.size() <= 2 && algebra.size() > 1) {
    report.notes.push_back(
        "trivial variety: sequences with n <= 1 exist only when every "
        "algebra has one element");
  }
  return report;
}

TermOperation star(const TermOperation& s) {
  require_ternary(s);
  TermOperation out{3, s.size, std::vector<Element>(s.table.size())};
  const auto N = static_cast<Element>(s.size);
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      for (Element z = 0; z < N; ++z) {
        out.table[(static_cast<std::size_t>(x) * N + y) * N + z] =
            s.at(x, s.at(x, y, y), s.at(x, y, z));
      }
  return out;
}

std::vector<TermOperation> star_transform(
    const FiniteAlgebra& algebra, std::span<const TermOperation> sequence) {
  require_shape(algebra, sequence, 3);
  std::vector<TermOperation> out;
  out.reserve(sequence.size());
  for (const auto& s : sequence) out.push_back(star(s));
  return out;
}

std::vector<TermOperation> double_star_transform(
    const FiniteAlgebra& algebra, std::span<const TermOperation> sequence) {
  auto once = star_transform(algebra, sequence);
  return star_transform(algebra, once);
}

Term star(const Term& s) {
  const Term x = Term::variable(0);
  const Term y = Term::variable(1);
  const Term z = Term::variable(2);
  const Term xyy[] = {x, y, y};
  const Term inner = substitute(s, xyy);
  const Term outer[] = {x, inner, s};
  return substitute(s, outer).with_arity(3);
}

std::vector<Term> star_transform(std::span<const Term> sequence) {
  std::vector<Term> out;
  out.reserve(sequence.size());
  for (const auto& s : sequence) out.push_back(star(s));
  return out;
}

ValidityReport check_tm(const FiniteAlgebra& algebra, const TermOperation& s1,
                        const Tolerance& theta, std::size_t m) {
  require_ternary(s1);
  if (theta.size() != algebra.size() || s1.size != algebra.size()) {
    throw ArgumentError("size mismatch in (T_m) check");
  }
  if (m == 0) throw ArgumentError("(T_m) needs m >= 1");
  ValidityReport report;
  const BinaryRelation chain = relation_power(theta.relation(), m);
  for (auto [a, c] : chain.pairs()) {
    const Element b = s1.at(a, a, c);
    if (!theta.relation().contains(a, b)) report.add({"T_m", 1, {a, c}, a, b});
  }
  return report;
}

ValidityReport check_am(const FiniteAlgebra& algebra, const TermOperation& s1,
                        const BinaryRelation& r,
                        std::span<const Direction> pattern) {
  require_ternary(s1);
  if (r.size() != algebra.size() || s1.size != algebra.size()) {
    throw ArgumentError("size mismatch in (A_m) check");
  }
  if (pattern.empty()) throw ArgumentError("(A_m) needs a pattern of length >= 1");
  if (!r.is_reflexive()) throw ArgumentError("(A_m) relation is not reflexive");
  if (!is_compatible(algebra, r)) {
    throw ArgumentError("(A_m) relation is not compatible");
  }
  const BinaryRelation conv = converse(r);
  std::vector<BinaryRelation> factors;
  for (auto d : pattern) factors.push_back(d == Direction::Forward ? r : conv);
  const BinaryRelation chain = compose_all(factors, r.size());
  ValidityReport report;
  for (auto [a, c] : chain.pairs()) {
    const Element b = s1.at(a, a, c);
    if (!r.contains(a, b)) report.add({"A_m", 1, {a, c}, a, b});
  }
  return report;
}

std::vector<std::vector<Direction>> all_patterns(std::size_t m) {
  std::vector<std::vector<Direction>> out;
  const std::size_t total = std::size_t{1} << m;
  for (std::size_t bits = 0; bits < total; ++bits) {
    std::vector<Direction> p(m);
    for (std::size_t j = 0; j < m; ++j) {
      p[j] = (bits >> (m - 1 - j)) & 1u ? Direction::Converse : Direction::Forward;
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

void require_witness_input(const FiniteAlgebra& algebra,
                           std::span<const TermOperation> sequence,
                           SequenceKind kind, std::size_t m) {
  if (kind != SequenceKind::Gumm && kind != SequenceKind::Alvin) {
    throw ArgumentError("witness construction needs a Gumm or alvin sequence");
  }
  if (m == 0) throw ArgumentError("m must be at least 1");
  if (sequence.size() < 2) {
    throw ArgumentError("sequence needs n >= 1 so that s_1 exists");
  }
  const auto check = check_sequence(algebra, sequence, kind);
  if (!check.valid()) {
    const auto& v = check.violations.front();
    throw ArgumentError("input is not a valid " + std::string(to_string(kind)) +
                        " sequence: (" + v.tag + ") fails at term " +
                        std::to_string(v.position));
  }
}

}  // namespace

WitnessCheck build_tm_witness(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind, std::size_t m) {
  require_witness_input(algebra, sequence, kind, m);
  WitnessCheck out;
  out.sequence.assign(sequence.begin(), sequence.end());
  for (std::size_t i = 1; i < m; ++i) {
    out.sequence = star_transform(algebra, out.sequence);
  }
  out.sequence_check = check_sequence(algebra, out.sequence, kind);
  for (const auto& theta : all_tolerances(algebra)) {
    out.property_check.merge(check_tm(algebra, out.sequence[1], theta, m));
    ++out.relations_checked;
  }
  return out;
}

WitnessCheck build_am_witness(const FiniteAlgebra& algebra,
                              std::span<const TermOperation> sequence,
                              SequenceKind kind, std::size_t m) {
  require_witness_input(algebra, sequence, kind, m);
  WitnessCheck out;
  out.sequence.assign(sequence.begin(), sequence.end());
  for (std::size_t i = 1; i < m; ++i) {
    out.sequence = double_star_transform(algebra, out.sequence);
  }
  out.sequence_check = check_sequence(algebra, out.sequence, kind);
  const auto patterns = all_patterns(m);
  for (const auto& r : reflexive_compatible_relations(algebra, 2)) {
    for (const auto& p : patterns) {
      out.property_check.merge(check_am(algebra, out.sequence[1], r, p));
    }
    ++out.relations_checked;
  }
  return out;
}

}  // namespace malt
