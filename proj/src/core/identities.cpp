#include "malt/identities.hpp"

#include <algorithm>

#include "malt/budget.hpp"
#include "malt/clone.hpp"
#include "malt/error.hpp"
#include "malt/parallel.hpp"

namespace malt {

namespace {

// Checks lhs within rhs (and the reverse when `equality`) for every tuple of
// `arity` ids below `members`, in lexicographic order. `eval` fills both
// sides for a tuple.
template <class Eval>
InclusionReport run_tuples(std::string tag, std::size_t members,
                           std::size_t arity, bool equality, Eval eval) {
  InclusionReport report;
  report.tag = std::move(tag);
  const std::size_t total = checked_power(members, arity);
  report.checked = total;
  const std::size_t chunks = chunk_count(total);
  std::vector<std::vector<InclusionViolation>> found(chunks);
  std::vector<std::size_t> counts(chunks, 0);
  parallel_chunks(total, [&](std::size_t chunk, std::size_t begin,
                             std::size_t end) {
    std::vector<std::size_t> ids(arity);
    BinaryRelation lhs, rhs;
    for (std::size_t q = begin; q < end; ++q) {
      std::size_t rest = q;
      for (std::size_t j = arity; j-- > 0;) {
        ids[j] = rest % members;
        rest /= members;
      }
      eval(std::span<const std::size_t>(ids), lhs, rhs);
      auto record = [&](const std::optional<Pair>& pair, const char* dir) {
        if (!pair) return;
        ++counts[chunk];
        if (found[chunk].size() < InclusionReport::kMaxRecorded) {
          found[chunk].push_back({ids, *pair, dir});
        }
      };
      record(lhs.first_missing_from(rhs), "subset");
      if (equality) record(rhs.first_missing_from(lhs), "superset");
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    report.violation_count += counts[c];
    for (auto& v : found[c]) {
      if (report.violations.size() < InclusionReport::kMaxRecorded) {
        report.violations.push_back(std::move(v));
      }
    }
  }
  return report;
}

// Pairwise compositions of lattice members, indexed i * size + j.
std::vector<BinaryRelation> all_compositions(const CongruenceLattice& con) {
  const std::size_t l = con.size();
  std::vector<BinaryRelation> out(l * l);
  parallel_chunks(l * l, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      out[q] = compose(con.relations()[q / l], con.relations()[q % l]);
    }
  });
  return out;
}

// The least chain x = c_0, ..., c_n = z with consecutive elements in
// r, s, r, ... alternately; empty when there is none.
std::vector<std::size_t> least_chain(const BinaryRelation& r,
                                     const BinaryRelation& s, std::size_t x,
                                     std::size_t z, std::size_t n) {
  const std::size_t size = r.size();
  auto step = [&](std::size_t h) -> const BinaryRelation& {
    return h % 2 == 0 ? r : s;
  };
  if (n == 0) return x == z ? std::vector<std::size_t>{x} : std::vector<std::size_t>{};
  // alive[h][e]: e can be c_h in a chain ending at z.
  std::vector<std::vector<char>> alive(n + 1, std::vector<char>(size, 0));
  alive[n][z] = 1;
  for (std::size_t h = n; h-- > 0;) {
    for (std::size_t e = 0; e < size; ++e) {
      for (std::size_t f = 0; f < size; ++f) {
        if (alive[h + 1][f] &&
            step(h).contains(static_cast<Element>(e), static_cast<Element>(f))) {
          alive[h][e] = 1;
          break;
        }
      }
    }
  }
  if (!alive[0][x]) return {};
  std::vector<std::size_t> chain{x};
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t f = 0; f < size; ++f) {
      if (alive[h + 1][f] && step(h).contains(static_cast<Element>(chain.back()),
                                             static_cast<Element>(f))) {
        chain.push_back(f);
        break;
      }
    }
  }
  return chain;
}

}  // namespace

InclusionReport check_cd_inclusion(const CongruenceLattice& con,
                                   std::size_t n) {
  const auto comp = all_compositions(con);
  const std::size_t l = con.size();
  const auto rel = con.relations();
  return run_tuples(
      "(CD)", l, 3, false,
      [&](std::span<const std::size_t> t, BinaryRelation& lhs,
          BinaryRelation& rhs) {
        const std::size_t a = t[0], b = t[1], c = t[2];
        lhs = intersect(rel[a], comp[b * l + c]);
        rhs = compose_chain(rel[con.meet(a, c)], rel[con.meet(a, b)], n);
      });
}

InclusionReport check_cd_inclusion(const FiniteAlgebra& algebra,
                                   std::size_t n) {
  return check_cd_inclusion(all_congruences(algebra), n);
}

CdVarietyDecision decide_cd_variety(const FiniteAlgebra& algebra,
                                    std::size_t n, std::size_t cap_clone) {
  const auto free = free_algebra(algebra, 3, cap_clone);
  const auto& f = free.algebra;
  const Element x = free.generators[0];
  const Element y = free.generators[1];
  const Element z = free.generators[2];
  const Pair xz[] = {{x, z}};
  const Pair xy[] = {{x, y}};
  const Pair yz[] = {{y, z}};
  const auto alpha = congruence_generated(f, xz);
  const auto beta = congruence_generated(f, xy);
  const auto gamma = congruence_generated(f, yz);
  const auto ag = meet_congruences(alpha, gamma).relation();
  const auto ab = meet_congruences(alpha, beta).relation();
  CdVarietyDecision out;
  out.free_size = f.size();
  out.chain = least_chain(ag, ab, x, z, n);
  out.holds = !out.chain.empty();
  return out;
}

std::size_t corollary6_chain_length(int clause, std::size_t ell,
                                    std::size_t n) {
  if (ell < 1) throw ArgumentError("ell must be at least 1");
  switch (clause) {
    case 1:
      return n;
    case 2:
      if (n < 2) throw ArgumentError("clause 2 needs n >= 2");
      return n == 2 ? 0 : (n - 2) * (ell - 1) + 1;
    case 3:
      if (n < 2) throw ArgumentError("clause 3 needs n >= 2");
      return (n - 2) * (ell - 1) + 2;
    case 4:
      if (n < 2) throw ArgumentError("clause 4 needs n >= 2");
      return ell * (n - 2) + 1;
    default:
      throw ArgumentError("clause must be 1, 2, 3 or 4");
  }
}

InclusionReport check_corollary6(const FiniteAlgebra& algebra,
                                 const Corollary6Params& params,
                                 std::optional<std::size_t> gumm_level) {
  const std::size_t k =
      corollary6_chain_length(params.clause, params.ell, params.n);
  if (!gumm_level) {
    const auto report = level(algebra, SequenceKind::Gumm);
    if (report.status != LevelStatus::Found) {
      throw ArgumentError("no Gumm terms found within the search caps");
    }
    gumm_level = report.level;
  }
  if (params.n < *gumm_level) {
    throw ArgumentError("n = " + std::to_string(params.n) +
                        " is below the Gumm level " +
                        std::to_string(*gumm_level));
  }
  const std::string tag = "C6." + std::to_string(params.clause);
  const std::size_t ell = params.ell;

  if (params.clause == 4) {
    const auto tolerances = all_tolerances(algebra);
    return run_tuples(
        tag, tolerances.size(), 2, false,
        [&](std::span<const std::size_t> t, BinaryRelation& lhs,
            BinaryRelation& rhs) {
          const auto& psi = tolerances[t[0]].relation();
          const auto& theta = tolerances[t[1]].relation();
          lhs = intersect(psi, relation_power(theta, ell));
          rhs = relation_power(intersect(psi, theta), k);
        });
  }

  const auto con = all_congruences(algebra);
  const auto comp = all_compositions(con);
  const std::size_t l = con.size();
  const auto rel = con.relations();
  return run_tuples(
      tag, l, 3, false,
      [&](std::span<const std::size_t> t, BinaryRelation& lhs,
          BinaryRelation& rhs) {
        const std::size_t a = t[0], b = t[1], c = t[2];
        const std::size_t ab = con.meet(a, b), ac = con.meet(a, c);
        switch (params.clause) {
          case 1:
            lhs = intersect(comp[b * l + c], rel[con.join(ab, ac)]);
            rhs = compose_chain(rel[ac], rel[ab], k);
            break;
          case 2: {
            lhs = intersect(rel[a], compose_chain(rel[b], rel[c], ell));
            auto first = intersect(intersect(rel[a], comp[b * l + c]),
                                   comp[c * l + b]);
            rhs = compose(first, compose_chain(rel[ab], rel[ac], k));
            break;
          }
          default:
            lhs = intersect(compose_chain(rel[b], rel[c], ell),
                            rel[con.join(ab, ac)]);
            rhs = compose_chain(rel[ac], rel[ab], k);
            break;
        }
      });
}

InclusionReport check_tschantz_identity(const FiniteAlgebra& algebra) {
  const auto con = all_congruences(algebra);
  const auto comp = all_compositions(con);
  const std::size_t l = con.size();
  const auto rel = con.relations();
  return run_tuples(
      "Tschantz", l, 3, true,
      [&](std::span<const std::size_t> t, BinaryRelation& lhs,
          BinaryRelation& rhs) {
        const std::size_t a = t[0], b = t[1], c = t[2];
        lhs = rel[con.meet(a, con.join(b, c))];
        rhs = compose(intersect(rel[a], comp[b * l + c]),
                      rel[con.join(con.meet(a, b), con.meet(a, c))]);
      });
}

InclusionReport check_tip(const FiniteAlgebra& algebra) {
  const auto tolerances = all_tolerances(algebra);
  std::vector<BinaryRelation> closures;
  closures.reserve(tolerances.size());
  for (const auto& t : tolerances) {
    closures.push_back(transitive_closure(t.relation()));
  }
  return run_tuples(
      "TIP", tolerances.size(), 2, true,
      [&](std::span<const std::size_t> t, BinaryRelation& lhs,
          BinaryRelation& rhs) {
        lhs = intersect(closures[t[0]], closures[t[1]]);
        rhs = transitive_closure(intersect(tolerances[t[0]].relation(),
                                           tolerances[t[1]].relation()));
      });
}

namespace {

void corollary11_sides(const std::vector<std::vector<BinaryRelation>>& beta,
                       const std::vector<std::vector<Congruence>>& cong,
                       std::size_t size, BinaryRelation& lhs,
                       BinaryRelation& rhs) {
  const std::size_t h = beta.size();
  const std::size_t g = beta[0].size();
  lhs = BinaryRelation::full(size);
  auto chains = BinaryRelation::full(size);
  for (std::size_t i = 0; i < h; ++i) {
    auto join = cong[i][0];
    for (std::size_t j = 1; j < g; ++j) join = join_congruences(join, cong[i][j]);
    lhs &= join.relation();
    chains &= compose_all(beta[i], size);
  }
  const std::size_t choices = checked_power(g, h);
  auto sum = Congruence::identity(size);
  std::vector<std::size_t> f(h);
  for (std::size_t q = 0; q < choices; ++q) {
    std::size_t rest = q;
    for (std::size_t i = h; i-- > 0;) {
      f[i] = rest % g;
      rest /= g;
    }
    auto meet = cong[0][f[0]];
    for (std::size_t i = 1; i < h; ++i) meet = meet_congruences(meet, cong[i][f[i]]);
    sum = join_congruences(sum, meet);
  }
  rhs = compose(chains, sum.relation());
}

void require_matrix(std::size_t h, std::size_t g) {
  if (h == 0 || g == 0) throw ArgumentError("h and g must be positive");
}

}  // namespace

InclusionReport check_corollary11(
    const FiniteAlgebra& algebra,
    const std::vector<std::vector<Congruence>>& beta) {
  require_matrix(beta.size(), beta.empty() ? 0 : beta[0].size());
  std::vector<std::vector<BinaryRelation>> relations;
  for (const auto& row : beta) {
    if (row.size() != beta[0].size()) {
      throw ArgumentError("congruence matrix rows differ in length");
    }
    std::vector<BinaryRelation> r;
    for (const auto& c : row) {
      if (c.size() != algebra.size()) {
        throw ArgumentError("congruence size does not match the algebra");
      }
      r.push_back(c.relation());
    }
    relations.push_back(std::move(r));
  }
  return run_tuples("C11", 1, 0, true,
                    [&](std::span<const std::size_t>, BinaryRelation& lhs,
                        BinaryRelation& rhs) {
                      corollary11_sides(relations, beta, algebra.size(), lhs,
                                        rhs);
                    });
}

InclusionReport check_corollary11_all(const FiniteAlgebra& algebra,
                                      std::size_t h, std::size_t g) {
  require_matrix(h, g);
  const auto con = all_congruences(algebra);
  return run_tuples(
      "C11", con.size(), checked_product(h, g), true,
      [&](std::span<const std::size_t> t, BinaryRelation& lhs,
          BinaryRelation& rhs) {
        std::vector<std::vector<Congruence>> cong(h);
        std::vector<std::vector<BinaryRelation>> rel(h);
        for (std::size_t i = 0; i < h; ++i) {
          for (std::size_t j = 0; j < g; ++j) {
            cong[i].push_back(con[t[i * g + j]]);
            rel[i].push_back(con.relations()[t[i * g + j]]);
          }
        }
        corollary11_sides(rel, cong, algebra.size(), lhs, rhs);
      });
}

std::string to_string(const PatternS& pattern) {
  std::string out = "a(g.b)";
  for (auto tag : pattern.tags) {
    out += tag == PatternTag::AlphaGammaBeta ? " o a(g.b)" : " o ag.ab";
  }
  return out;
}

std::vector<PatternS> all_patterns_s(std::size_t max_r) {
  std::vector<PatternS> out;
  for (std::size_t r = 1; r <= max_r; ++r) {
    const std::size_t count = std::size_t{1} << (r - 1);
    for (std::size_t mask = 0; mask < count; ++mask) {
      PatternS p;
      for (std::size_t i = r - 1; i-- > 0;) {
        p.tags.push_back((mask >> i) & 1 ? PatternTag::AlphaGammaThenAlphaBeta
                                         : PatternTag::AlphaGammaBeta);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotEvaluated: return "not-evaluated";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

bool Theorem12Report::implication_holds() const {
  if (s_verdict != Verdict::Holds) return true;
  if (s1_verdict != Verdict::Holds) return false;
  return splus_verdict == Verdict::Holds ||
         splus_verdict == Verdict::NotApplicable;
}

Theorem12Report check_theorem12(const CongruenceLattice& con,
                                const PatternS& pattern) {
  const auto comp = all_compositions(con);
  const std::size_t l = con.size();
  const auto rel = con.relations();
  const std::size_t n = l == 0 ? 0 : rel[0].size();

  // Which factor replaces the first (S1) and the last (S+) one.
  auto run = [&](std::string tag, bool first_split, bool last_split) {
    return run_tuples(
        std::move(tag), l, 3, false,
        [&](std::span<const std::size_t> t, BinaryRelation& lhs,
            BinaryRelation& rhs) {
          const std::size_t a = t[0], b = t[1], c = t[2];
          lhs = intersect(rel[a], comp[b * l + c]);
          const auto agb = intersect(rel[a], comp[c * l + b]);
          const auto split = compose(rel[con.meet(a, c)], rel[con.meet(a, b)]);
          std::vector<BinaryRelation> factors;
          factors.push_back(first_split ? split : agb);
          for (std::size_t i = 0; i < pattern.tags.size(); ++i) {
            const bool last = i + 1 == pattern.tags.size();
            if (last && last_split) {
              factors.push_back(split);
            } else {
              factors.push_back(pattern.tags[i] == PatternTag::AlphaGammaBeta
                                    ? agb
                                    : split);
            }
          }
          rhs = compose_all(factors, n);
        });
  };

  Theorem12Report report;
  report.pattern = pattern;
  report.s = run("T12.S", false, false);
  report.s_verdict = report.s.holds() ? Verdict::Holds : Verdict::Fails;
  const bool plus_applies = pattern.r() >= 2 &&
                            pattern.tags.back() == PatternTag::AlphaGammaBeta;
  report.splus_verdict =
      plus_applies ? Verdict::NotEvaluated : Verdict::NotApplicable;
  if (!report.s.holds()) return report;
  report.s1 = run("T12.S1", true, false);
  report.s1_verdict = report.s1->holds() ? Verdict::Holds : Verdict::Fails;
  if (plus_applies) {
    report.splus = run("T12.S+", true, true);
    report.splus_verdict =
        report.splus->holds() ? Verdict::Holds : Verdict::Fails;
  }
  return report;
}

Theorem12Report check_theorem12(const FiniteAlgebra& algebra,
                                const PatternS& pattern) {
  return check_theorem12(all_congruences(algebra), pattern);
}

}  // namespace malt
