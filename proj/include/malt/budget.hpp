#pragma once

#include <cstddef>
#include <string_view>

namespace malt {

/// Memory budget in bytes. Read once from MALT_BUDGET_MB (megabytes);
/// defaults to 4096 MB when the variable is unset or unparsable.
std::size_t memory_budget_bytes();

/// Throws BudgetExceeded if `bytes` exceeds the budget.
void require_budget(std::size_t bytes, std::string_view what);

/// base^exp, throwing BudgetExceeded on overflow of std::size_t.
std::size_t checked_power(std::size_t base, std::size_t exp);

/// a*b, throwing BudgetExceeded on overflow.
std::size_t checked_product(std::size_t a, std::size_t b);

}  // namespace malt
