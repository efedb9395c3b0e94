#include "malt/suites.hpp"

#include <array>

#include "malt/clone.hpp"
#include "malt/congruence.hpp"
#include "malt/error.hpp"
#include "malt/identities.hpp"
#include "malt/sequence.hpp"

namespace malt {

namespace {

template <class T>
std::optional<T> optional_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  const Json& v = doc[key];
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ArgumentError(std::string(key) + " must be a boolean");
  } else {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ArgumentError(std::string(key) + " must be a non-negative integer");
    }
  }
  return v.get<T>();
}

std::string level_text(const LevelReport& r) {
  return r.level ? std::to_string(*r.level) : "none up to " + std::to_string(r.cap_n);
}

class Context {
 public:
  Context(const FiniteAlgebra& algebra, const SuiteParams& params,
          SuiteReport& report)
      : algebra_(algebra), params_(params), report_(report) {}

  // Level of a kind, computed once. Partial clones mark the report
  // inconclusive.
  const LevelReport& level_of(SequenceKind kind) {
    auto& slot = levels_[static_cast<std::size_t>(kind)];
    if (!slot) {
      LevelOptions options;
      options.cap_n = params_.cap_n;
      options.cap_clone = params_.cap_clone;
      options.allow_large_day = params_.allow_large_day;
      slot = level(algebra_, kind, options);
      if (slot->status == LevelStatus::PartialClone) {
        report_.inconclusive = true;
        report_.notes.push_back(std::string(to_string(kind)) +
                                " level: clone generation hit its cap");
      }
    }
    return *slot;
  }

  bool found(SequenceKind kind) {
    return level_of(kind).status == LevelStatus::Found;
  }

  // Requires terms of a kind; otherwise the suite is inconclusive.
  bool require(SequenceKind kind, std::string_view property) {
    if (found(kind)) return true;
    report_.inconclusive = true;
    report_.notes.push_back("no " + std::string(to_string(kind)) +
                            " terms found up to the caps; the algebra is not "
                            "known to generate a " + std::string(property) +
                            " variety");
    return false;
  }

  void assert_that(std::string label, std::string statement, bool holds,
                   Json detail = Json::object()) {
    report_.assertions.push_back(
        {std::move(label), std::move(statement), holds, std::move(detail)});
  }

  void note(std::string text) { report_.notes.push_back(std::move(text)); }

 private:
  const FiniteAlgebra& algebra_;
  const SuiteParams& params_;
  SuiteReport& report_;
  std::array<std::optional<LevelReport>, 4> levels_;
};

void suite_theorem4(const FiniteAlgebra& a, const SuiteParams&, Context& ctx) {
  const auto& alvin = ctx.level_of(SequenceKind::Alvin);
  const auto& gumm = ctx.level_of(SequenceKind::Gumm);
  Json detail;
  detail["alvin"] = to_json(alvin);
  detail["gumm"] = to_json(gumm);
  if (gumm.status == LevelStatus::Found) {
    const bool ok = alvin.status != LevelStatus::Found || *gumm.level <= *alvin.level;
    ctx.assert_that("g<=a",
                    "gumm level " + level_text(gumm) + " <= alvin level " +
                        level_text(alvin),
                    ok, detail);
  }
  if (!ctx.found(SequenceKind::Jonsson)) {
    ctx.note("no Jonsson terms up to the cap: the alvin = gumm equality is "
             "only claimed for congruence distributive varieties");
    return;
  }
  if (!ctx.require(SequenceKind::Alvin, "congruence distributive") ||
      !ctx.require(SequenceKind::Gumm, "congruence modular")) {
    return;
  }
  ctx.assert_that("T4",
                  "alvin level " + level_text(alvin) + " = gumm level " +
                      level_text(gumm),
                  *alvin.level == *gumm.level, detail);
  (void)a;
}

void suite_theorem5(const FiniteAlgebra& a, const SuiteParams& p, Context& ctx) {
  const std::size_t max_m = p.m.value_or(4);
  if (max_m == 0) throw ArgumentError("m must be at least 1");
  const auto tolerances = all_tolerances(a);
  bool any = false;
  for (SequenceKind kind : {SequenceKind::Gumm, SequenceKind::Alvin}) {
    const auto& lr = ctx.level_of(kind);
    if (lr.status != LevelStatus::Found) continue;
    if (*lr.level == 0) {
      ctx.note(std::string(to_string(kind)) +
               " level is 0 (trivial variety); nothing to transform");
      any = true;
      continue;
    }
    any = true;
    for (std::size_t m = 1; m <= max_m; ++m) {
      const auto w = build_tm_witness(a, lr.witness, kind, m);
      Json detail;
      detail["kind"] = std::string(to_string(kind));
      detail["m"] = m;
      detail["tolerances"] = w.relations_checked;
      detail["sequence_check"] = to_json(w.sequence_check);
      detail["property_check"] = to_json(w.property_check);
      ctx.assert_that(
          "T5",
          std::string(to_string(kind)) + " witness starred " +
              std::to_string(m - 1) + " times stays valid and s_1 satisfies (T_" +
              std::to_string(m) + ") on " + std::to_string(w.relations_checked) +
              " tolerances",
          w.sequence_check.valid() && w.property_check.valid(), detail);
    }
    if (kind == SequenceKind::Gumm) {
      ValidityReport r9;
      for (const auto& t : tolerances) {
        r9.merge(check_tm(a, lr.witness[1], t, 2));
      }
      ctx.assert_that("R9",
                      "untransformed t_1 of the gumm witness satisfies (T_2)",
                      r9.valid(), to_json(r9));
    }
  }
  if (!any) ctx.require(SequenceKind::Gumm, "congruence modular");
}

void suite_corollary6(const FiniteAlgebra& a, const SuiteParams& p,
                      Context& ctx) {
  if (!ctx.require(SequenceKind::Gumm, "congruence modular")) return;
  const std::size_t gumm = *ctx.level_of(SequenceKind::Gumm).level;
  const std::size_t n = p.n.value_or(std::max<std::size_t>(gumm, 2));
  std::vector<int> clauses = {1, 2, 3, 4};
  if (p.clause) clauses = {*p.clause};
  std::vector<std::size_t> ells = {1, 2, 3};
  if (p.ell) ells = {*p.ell};
  for (int clause : clauses) {
    for (std::size_t ell : ells) {
      const std::size_t k = corollary6_chain_length(clause, ell, n);
      const auto report = check_corollary6(a, {clause, ell, n}, gumm);
      Json detail = to_json(report);
      detail["clause"] = clause;
      detail["ell"] = ell;
      detail["n"] = n;
      detail["k"] = k;
      std::string statement = "clause " + std::to_string(clause);
      if (clause != 1) statement += ", ell=" + std::to_string(ell);
      statement += ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                   " over " + std::to_string(report.checked) +
                   (clause == 4 ? " tolerance pairs" : " congruence triples");
      ctx.assert_that(report.tag, statement, report.holds(), detail);
      if (clause == 1) break;
    }
  }
}

void suite_tip(const FiniteAlgebra& a, const SuiteParams&, Context& ctx) {
  if (!ctx.require(SequenceKind::Gumm, "congruence modular")) return;
  const auto tip = check_tip(a);
  ctx.assert_that("TIP",
                  "tolerance intersection property over " +
                      std::to_string(tip.checked) + " tolerance pairs",
                  tip.holds(), to_json(tip));
  const auto t = check_tschantz_identity(a);
  ctx.assert_that("Tschantz",
                  "a(b+g) = a(b.g) o (ab+ag) over " + std::to_string(t.checked) +
                      " congruence triples",
                  t.holds(), to_json(t));
}

void suite_corollary11(const FiniteAlgebra& a, const SuiteParams& p,
                       Context& ctx) {
  if (!ctx.require(SequenceKind::Gumm, "congruence modular")) return;
  const std::size_t h = p.h.value_or(2), g = p.g.value_or(2);
  const auto report = check_corollary11_all(a, h, g);
  Json detail = to_json(report);
  detail["h"] = h;
  detail["g"] = g;
  ctx.assert_that("C11",
                  std::to_string(h) + "x" + std::to_string(g) +
                      " congruence matrices: " + std::to_string(report.checked),
                  report.holds(), detail);
}

void suite_theorem12(const FiniteAlgebra& a, const SuiteParams& p,
                     Context& ctx) {
  if (!ctx.require(SequenceKind::Jonsson, "congruence distributive")) return;
  const std::size_t r = p.r.value_or(3);
  if (r == 0) throw ArgumentError("r must be at least 1");
  ctx.note("per-algebra check of S => S1 (and S+); a necessary condition, "
           "not a variety-level claim");
  const auto con = all_congruences(a);
  for (const auto& pattern : all_patterns_s(r)) {
    const auto report = check_theorem12(con, pattern);
    ctx.assert_that("T12",
                    "pattern " + to_string(pattern) + ": S " +
                        to_string(report.s_verdict) + ", S1 " +
                        to_string(report.s1_verdict) + ", S+ " +
                        to_string(report.splus_verdict),
                    report.implication_holds(), to_json(report));
  }
}

// Day level, or nullopt (with a note) when it is skipped or unavailable.
std::optional<std::size_t> day_level(const FiniteAlgebra& a,
                                     const SuiteParams& p, Context& ctx) {
  if (a.size() > 2 && !p.allow_large_day) {
    ctx.note("Day level skipped for an algebra with more than 2 elements; "
             "pass allow_large_day to compute it");
    return std::nullopt;
  }
  const auto& day = ctx.level_of(SequenceKind::Day);
  if (day.status != LevelStatus::Found) {
    ctx.note("Day level: " + level_text(day));
    return std::nullopt;
  }
  return day.level;
}

void mark_inconclusive(Context& ctx, SuiteReport& report, std::string why) {
  report.inconclusive = true;
  ctx.note(std::move(why));
}

void suite_remark7(const FiniteAlgebra& a, const SuiteParams& p, Context& ctx,
                   SuiteReport& report) {
  if (!ctx.require(SequenceKind::Gumm, "congruence modular")) return;
  const std::size_t n = *ctx.level_of(SequenceKind::Gumm).level;
  const auto r = day_level(a, p, ctx);
  if (!r) return mark_inconclusive(ctx, report, "Day level unavailable");
  Json detail;
  detail["gumm"] = n;
  detail["day"] = *r;
  if (n < 2) {
    ctx.note("gumm level below 2: the bound 2n-2 is stated for n >= 2");
    ctx.assert_that("GD", "trivial variety: day level " + std::to_string(*r) +
                              " = 0", *r == 0, detail);
    return;
  }
  ctx.assert_that("GD",
                  "day level " + std::to_string(*r) + " <= 2*" +
                      std::to_string(n) + "-2 = " + std::to_string(2 * n - 2),
                  *r <= 2 * n - 2, detail);
  ctx.assert_that("DG",
                  "gumm level " + std::to_string(n) + " <= r^2-r+1 = " +
                      std::to_string(*r * *r - *r + 1),
                  n <= *r * *r - *r + 1, detail);
}

void suite_theorem8(const FiniteAlgebra& a, const SuiteParams& p, Context& ctx,
                    SuiteReport& report) {
  if (!ctx.require(SequenceKind::Jonsson, "congruence distributive")) return;
  const std::size_t j = *ctx.level_of(SequenceKind::Jonsson).level;
  const auto r = day_level(a, p, ctx);
  if (!r) return mark_inconclusive(ctx, report, "Day level unavailable");
  Json detail;
  detail["jonsson"] = j;
  detail["day"] = *r;
  ctx.assert_that("T8",
                  "jonsson level " + std::to_string(j) + " <= r^2-r+2 = " +
                      std::to_string(*r * *r - *r + 2) + " for day level " +
                      std::to_string(*r),
                  j <= *r * *r - *r + 2, detail);
}

constexpr std::array<std::string_view, 8> kSuites = {
    "theorem4", "theorem5", "corollary6", "tip",
    "corollary11", "theorem12", "theorem8", "remark7"};

}  // namespace

SuiteParams parse_suite_params(const Json& doc) {
  if (!doc.is_object()) throw ArgumentError("suite parameters must be an object");
  SuiteParams p;
  if (auto c = optional_field<int>(doc, "clause")) p.clause = *c;
  p.ell = optional_field<std::size_t>(doc, "ell");
  p.n = optional_field<std::size_t>(doc, "n");
  p.m = optional_field<std::size_t>(doc, "m");
  p.r = optional_field<std::size_t>(doc, "r");
  p.h = optional_field<std::size_t>(doc, "h");
  p.g = optional_field<std::size_t>(doc, "g");
  if (auto v = optional_field<std::size_t>(doc, "cap_n")) p.cap_n = *v;
  if (auto v = optional_field<std::size_t>(doc, "cap_clone")) p.cap_clone = *v;
  if (auto v = optional_field<bool>(doc, "allow_large_day")) p.allow_large_day = *v;
  return p;
}

SuiteOutcome SuiteReport::outcome() const {
  for (const auto& a : assertions) {
    if (!a.holds) return SuiteOutcome::Fail;
  }
  return inconclusive ? SuiteOutcome::Inconclusive : SuiteOutcome::Pass;
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["algebra"] = algebra;
  switch (outcome()) {
    case SuiteOutcome::Pass: j["outcome"] = "PASS"; break;
    case SuiteOutcome::Fail: j["outcome"] = "FAIL"; break;
    case SuiteOutcome::Inconclusive: j["outcome"] = "INCONCLUSIVE"; break;
  }
  Json list = Json::array();
  for (const auto& a : assertions) {
    Json e;
    e["label"] = a.label;
    e["statement"] = a.statement;
    e["holds"] = a.holds;
    e["detail"] = a.detail;
    list.push_back(std::move(e));
  }
  j["assertions"] = std::move(list);
  j["notes"] = notes;
  return j;
}

std::span<const std::string_view> suite_names() { return kSuites; }

SuiteReport run_suite(const FiniteAlgebra& algebra, std::string_view suite,
                      const SuiteParams& params) {
  SuiteReport report;
  report.suite = std::string(suite);
  report.algebra = algebra.name();
  Context ctx(algebra, params, report);
  if (suite == "theorem4") {
    suite_theorem4(algebra, params, ctx);
  } else if (suite == "theorem5") {
    suite_theorem5(algebra, params, ctx);
  } else if (suite == "corollary6") {
    suite_corollary6(algebra, params, ctx);
  } else if (suite == "tip") {
    suite_tip(algebra, params, ctx);
  } else if (suite == "corollary11") {
    suite_corollary11(algebra, params, ctx);
  } else if (suite == "theorem12") {
    suite_theorem12(algebra, params, ctx);
  } else if (suite == "theorem8") {
    suite_theorem8(algebra, params, ctx, report);
  } else if (suite == "remark7") {
    suite_remark7(algebra, params, ctx, report);
  } else {
    throw ArgumentError("unknown suite '" + std::string(suite) + "'");
  }
  return report;
}

}  // namespace malt
