#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/report.hpp"

namespace malt {

/// Optional knobs of the verify suites. Unset values are bound from
/// computed levels so a single call is self-contained.
struct SuiteParams {
  std::optional<int> clause;
  std::optional<std::size_t> ell;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> r;
  std::optional<std::size_t> h;
  std::optional<std::size_t> g;
  std::size_t cap_n = 12;
  std::size_t cap_clone = 1'000'000;
  bool allow_large_day = false;
};

SuiteParams parse_suite_params(const Json& doc);

enum class SuiteOutcome { Pass, Fail, Inconclusive };

struct Assertion {
  std::string label;      // e.g. "T4", "C6.3", "TIP"
  std::string statement;  // human-readable claim
  bool holds = false;
  Json detail;
};

struct SuiteReport {
  std::string suite;
  std::string algebra;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;
  bool inconclusive = false;

  SuiteOutcome outcome() const;
  Json to_json() const;
};

std::span<const std::string_view> suite_names();

/// Suites: theorem4, theorem5, corollary6, tip, corollary11, theorem12,
/// theorem8, remark7. Throws ArgumentError for an unknown suite.
SuiteReport run_suite(const FiniteAlgebra& algebra, std::string_view suite,
                      const SuiteParams& params = {});

}  // namespace malt
