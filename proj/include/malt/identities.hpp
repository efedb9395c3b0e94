#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/congruence.hpp"
#include "malt/relation.hpp"

namespace malt {

struct InclusionViolation {
  std::vector<std::size_t> relation_ids;  // indices into the enumerated space
  Pair pair;                              // least offending pair
  std::string direction;                  // "subset" or "superset"

  bool operator==(const InclusionViolation&) const = default;
};

/// Result of checking an inclusion (or an equality, as two inclusions) over
/// every tuple of congruences or tolerances. Violations are recorded in
/// lexicographic tuple order.
struct InclusionReport {
  std::string tag;
  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<InclusionViolation> violations;  // first kMaxRecorded

  static constexpr std::size_t kMaxRecorded = 32;

  bool holds() const { return violation_count == 0; }
};

/// (CD): alpha(beta o gamma) within alpha gamma o alpha beta o ... (n
/// factors), over all congruence triples.
InclusionReport check_cd_inclusion(const CongruenceLattice& con,
                                   std::size_t n);
InclusionReport check_cd_inclusion(const FiniteAlgebra& algebra,
                                   std::size_t n);

struct CdVarietyDecision {
  bool holds = false;
  /// When holds: x = c_0, c_1, ..., c_n = z, consecutive elements related
  /// alternately by alpha gamma and alpha beta. The c_h are alvin terms.
  std::vector<std::size_t> chain;
  std::size_t free_size = 0;
};

/// Decides (CD) with n factors for the whole variety generated by the
/// algebra, inside the free algebra on x, y, z with alpha = Cg(x,z),
/// beta = Cg(x,y), gamma = Cg(y,z).
CdVarietyDecision decide_cd_variety(const FiniteAlgebra& algebra,
                                    std::size_t n,
                                    std::size_t cap_clone = 1'000'000);

/// Chain length on the right-hand side of clauses (2) and (3):
/// (n-2)(ell-1)+1, or 0 when n = 2, for clause 2; (n-2)(ell-1)+2 for
/// clause 3; ell(n-2)+1 for clause 4; n for clause 1.
std::size_t corollary6_chain_length(int clause, std::size_t ell, std::size_t n);

struct Corollary6Params {
  int clause = 1;
  std::size_t ell = 1;
  std::size_t n = 2;
};

/// Clauses 1-3 run over congruence triples, clause 4 over tolerance pairs.
/// n must be at least the Gumm level of the algebra: pass `gumm_level` if
/// known, otherwise it is computed. Throws ArgumentError if n is smaller or
/// the algebra has no Gumm terms within the default caps.
InclusionReport check_corollary6(const FiniteAlgebra& algebra,
                                 const Corollary6Params& params,
                                 std::optional<std::size_t> gumm_level = {});

/// alpha(beta + gamma) = alpha(beta o gamma) o (alpha beta + alpha gamma).
InclusionReport check_tschantz_identity(const FiniteAlgebra& algebra);
/// Psi* Theta* = (Psi Theta)* over all tolerance pairs.
InclusionReport check_tip(const FiniteAlgebra& algebra);

/// Checks, for an h x g matrix of congruences,
///   prod_i (b_i1 + ... + b_ig)
///     = prod_i (b_i1 o ... o b_ig) o sum_f b_1f(1) ... b_hf(h).
InclusionReport check_corollary11(
    const FiniteAlgebra& algebra,
    const std::vector<std::vector<Congruence>>& beta);

/// Runs check_corollary11 for every h x g matrix over Con(A). Relation ids
/// in violations are the row-major lattice indices of the matrix.
InclusionReport check_corollary11_all(const FiniteAlgebra& algebra,
                                      std::size_t h, std::size_t g);

enum class PatternTag { AlphaGammaBeta, AlphaGammaThenAlphaBeta };

/// Tags of A_2..A_r.
struct PatternS {
  std::vector<PatternTag> tags;
  std::size_t r() const { return tags.size() + 1; }
};

std::string to_string(const PatternS& pattern);
/// All patterns with 1 <= r <= max_r.
std::vector<PatternS> all_patterns_s(std::size_t max_r);

enum class Verdict { Holds, Fails, NotEvaluated, NotApplicable };
std::string to_string(Verdict verdict);

struct Theorem12Report {
  PatternS pattern;
  InclusionReport s;
  std::optional<InclusionReport> s1;
  std::optional<InclusionReport> splus;
  Verdict s_verdict = Verdict::NotEvaluated;
  Verdict s1_verdict = Verdict::NotEvaluated;
  Verdict splus_verdict = Verdict::NotEvaluated;

  /// S holding implies S1 holding, and S+ when applicable.
  bool implication_holds() const;
};

/// Per-algebra evaluation of (S); (S1) only if (S) holds; (S+) only if (S1)
/// was evaluated, r >= 2 and the last tag is AlphaGammaBeta.
Theorem12Report check_theorem12(const FiniteAlgebra& algebra,
                                const PatternS& pattern);
Theorem12Report check_theorem12(const CongruenceLattice& con,
                                const PatternS& pattern);

}  // namespace malt
