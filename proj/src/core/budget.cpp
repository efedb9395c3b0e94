#include "malt/budget.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "malt/error.hpp"

namespace malt {

std::size_t memory_budget_bytes() {
  static const std::size_t budget = [] {
    constexpr std::size_t kDefaultMb = 4096;
    std::size_t mb = kDefaultMb;
    if (const char* env = std::getenv("MALT_BUDGET_MB")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) mb = static_cast<std::size_t>(v);
    }
    return mb * 1024 * 1024;
  }();
  return budget;
}

void require_budget(std::size_t bytes, std::string_view what) {
  if (bytes > memory_budget_bytes()) {
    throw BudgetExceeded(std::string(what) + " needs " +
                         std::to_string(bytes / (1024 * 1024)) +
                         " MB, budget is " +
                         std::to_string(memory_budget_bytes() / (1024 * 1024)) +
                         " MB (MALT_BUDGET_MB)");
  }
}

std::size_t checked_product(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw BudgetExceeded("size overflow");
  }
  return a * b;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) result = checked_product(result, base);
  return result;
}

}  // namespace malt
