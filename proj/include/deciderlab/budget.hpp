#pragma once

// Step-allowance policy T(n) = a*n^2 + b*n + c over total input bit length.

#include <cstdint>
#include <limits>

namespace deciderlab {

struct BudgetPolicy {
  std::uint64_t quadratic = 1;  // a
  std::uint64_t linear = 0;     // b
  std::uint64_t constant = 100; // c

  // Monotonically increasing and never zero: a+b >= 1 keeps T growing, the
  // default constant keeps even one-step machines inside tiny budgets.
  bool valid() const { return quadratic + linear >= 1; }

  std::uint64_t operator()(std::uint64_t n) const {
    using u128 = unsigned __int128;
    u128 t = static_cast<u128>(quadratic) * n * n + static_cast<u128>(linear) * n + constant;
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    return t > cap ? cap : static_cast<std::uint64_t>(t);
  }

  friend bool operator==(const BudgetPolicy&, const BudgetPolicy&) = default;
};

}  // namespace deciderlab
