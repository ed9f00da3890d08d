#pragma once

// The two-input universal decider d(d', k): answer k directly when d' = 0
// ("straight mode"), otherwise interpret the machine named by d' on k under
// an explicit host cost model, so the price of simulation is measurable.
//
// Cost model (frozen):
//   - decoding d' costs one host step per bit of its encoding, paid up front;
//   - each simulated step costs 1 + row_scan host steps, where row_scan is
//     the 1-based position of the matching row in canonical row order (the
//     interpreter really does scan the description row by row).
// Straight mode charges exactly one host step per machine step.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deciderlab/budget.hpp"
#include "deciderlab/enumeration.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab {

struct CostedDecision {
  Verdict verdict = Verdict::StillRunning;
  std::uint64_t simulated_steps = 0;
  std::uint64_t host_steps = 0;

  bool decided() const { return verdict != Verdict::StillRunning; }
  int value() const {
    assert(decided());
    return verdict == Verdict::Yes ? 1 : 0;
  }

  friend bool operator==(const CostedDecision&, const CostedDecision&) = default;
};

// Exact nonnegative fraction; kept unreduced, compared by cross-multiplying.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator<(const Ratio& a, const Ratio& b) {
    using u128 = unsigned __int128;
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    using u128 = unsigned __int128;
    return static_cast<u128>(a.num) * b.den == static_cast<u128>(b.num) * a.den;
  }
};

struct OverheadReport {
  CostedDecision direct;
  CostedDecision selfsim;
  std::optional<Ratio> ratio;  // selfsim.host_steps / direct.host_steps
};

inline constexpr std::uint64_t kDefaultOverheadHeadroom = 4;

namespace detail {

// Interprets `m` on `k`, scanning the canonical row list for each transition
// and charging the cost model. Kept independent of vm::step on purpose: the
// direct runner and this interpreter are separate routes that the fidelity
// tests compare against each other.
inline CostedDecision simulate_costed(const MachineDescription& m,
                                      std::uint64_t decode_charge,
                                      std::string_view k, std::uint64_t budget) {
  assert(budget >= 1);
  struct RowEntry {
    std::uint32_t state;
    Symbol symbol;
  };
  std::vector<RowEntry> order;
  order.reserve(m.rules.size());
  for (std::uint32_t q = 0; q < m.state_count; ++q) {
    for (std::uint32_t s = 0; s < kSymbolCount; ++s) {
      order.push_back({q, static_cast<Symbol>(s)});
    }
  }

  TapeConfiguration config(m, k);
  std::uint64_t host = decode_charge;
  for (std::uint64_t s = 1; s <= budget; ++s) {
    std::uint64_t scan = 0;
    const Rule* hit = nullptr;
    for (const RowEntry& row : order) {
      ++scan;
      if (row.state == config.state() && row.symbol == config.read()) {
        hit = &m.rule(row.state, row.symbol);
        break;
      }
    }
    assert(hit != nullptr);
    host += 1 + scan;
    config.write(hit->write);
    config.move(hit->move);
    if (hit->next.is_accept()) return {Verdict::Yes, s, host};
    if (hit->next.is_reject()) return {Verdict::No, s, host};
    config.set_state(hit->next.state_id());
  }
  return {Verdict::StillRunning, budget, host};
}

}  // namespace detail

class UniversalDecider {
 public:
  explicit UniversalDecider(DeciderIndex self_index, BudgetPolicy policy = {})
      : self_index_(self_index),
        policy_(policy),
        self_machine_(machine_for_index(self_index)) {
    assert(policy_.valid());
  }

  // Uses the machine's canonical encoding index, which is never 0, so
  // self-simulation always takes the simulation path. Requires the encoding
  // to fit the index range (up to 3 states).
  static UniversalDecider for_machine(const MachineDescription& m, BudgetPolicy policy = {}) {
    std::optional<DeciderIndex> index = canonical_index(m);
    assert(index.has_value());
    return UniversalDecider(*index, policy);
  }

  DeciderIndex self_index() const { return self_index_; }
  const BudgetPolicy& policy() const { return policy_; }
  const MachineDescription& self_machine() const { return self_machine_; }

  // Budget caps the simulated machine's own steps in both modes; host_steps
  // reports the charged cost on top.
  CostedDecision decide(DeciderIndex d_prime, std::string_view k, std::uint64_t budget) const {
    assert(budget >= 1);
    if (d_prime == 0) {
      RunOutcome direct = run(self_machine_, k, budget);
      return {direct.verdict, direct.steps, direct.steps};
    }
    std::string bits = index_to_bits(d_prime);
    MachineDescription m = bits_to_machine(bits);
    return detail::simulate_costed(m, bits.size(), k, budget);
  }

  // Time-limited semantics: budget T(|self| + |d'| + |k|) simulated steps,
  // and silence collapses to No, so the answer is always 0 or 1.
  int decide_time_limited(DeciderIndex d_prime, std::string_view k,
                          CostedDecision* detail_out = nullptr) const {
    std::uint64_t n = bit_length(self_index_) + bit_length(d_prime) + k.size();
    // A degenerate policy with T(n) = 0 still grants one step; the default
    // policy's constant keeps this moot.
    std::uint64_t budget = std::max<std::uint64_t>(1, policy_(n));
    CostedDecision d = decide(d_prime, k, budget);
    if (detail_out) *detail_out = d;
    return d.verdict == Verdict::Yes ? 1 : 0;
  }

  CostedDecision self_simulate(std::string_view k, std::uint64_t budget) const {
    return decide(self_index_, k, budget);
  }

  // Direct decision vs. self-simulation of the same decision, with the cost
  // ratio when both sides reach a verdict.
  OverheadReport overhead_report(std::string_view k, std::uint64_t budget,
                                 std::uint64_t headroom = kDefaultOverheadHeadroom) const {
    assert(budget >= 1 && headroom >= 1);
    OverheadReport report;
    report.direct = decide(0, k, budget);
    report.selfsim = self_simulate(k, budget * headroom);
    if (report.direct.decided() && report.selfsim.decided()) {
      report.ratio = Ratio{report.selfsim.host_steps, report.direct.host_steps};
    }
    return report;
  }

 private:
  DeciderIndex self_index_;
  BudgetPolicy policy_;
  MachineDescription self_machine_;
};

}  // namespace deciderlab
