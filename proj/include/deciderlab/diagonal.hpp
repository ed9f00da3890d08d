#pragma once

// Time-limited prediction table and its diagonal escape: the table cell
// (d, k) is what decider d answers on input k within T(|d|+|k|) steps
// (silence means No), and g(k) negates the diagonal cell (k, k), so g
// disagrees with every row of the table at that row's own index.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "deciderlab/budget.hpp"
#include "deciderlab/enumeration.hpp"
#include "deciderlab/parallel.hpp"
#include "deciderlab/universal.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab {

// Lazily evaluated: cells are pure functions of (policy, d, k), computed on
// demand by the zero-overhead baseline predictor (a direct run), so the host
// cost of a prediction equals the simulated step count.
struct PredictionTable {
  BudgetPolicy policy;

  struct Cell {
    int value = 0;
    std::uint64_t host_steps = 0;
    std::uint64_t budget = 0;
    bool timed_out = false;
  };

  Cell predict(DeciderIndex d, DeciderIndex k) const {
    std::uint64_t budget = std::max<std::uint64_t>(1, policy(bit_length(d) + bit_length(k)));
    RunOutcome outcome = run(machine_for_index(d), index_to_bits(k), budget);
    Cell cell;
    cell.budget = budget;
    cell.timed_out = !outcome.decided();
    cell.value = outcome.decided() ? outcome.value() : 0;
    cell.host_steps = outcome.steps;
    return cell;
  }
};

class DiagonalDecider {
 public:
  explicit DiagonalDecider(BudgetPolicy policy = {}) : table_{policy} {}

  const PredictionTable& table() const { return table_; }

  struct GValue {
    int value = 0;
    std::uint64_t host_steps = 0;  // prediction cost plus one negation step
    std::uint64_t budget = 0;
    bool timed_out = false;
  };

  GValue g_value(DeciderIndex k) const {
    PredictionTable::Cell cell = table_.predict(k, k);
    return {1 - cell.value, cell.host_steps + 1, cell.budget, cell.timed_out};
  }

 private:
  PredictionTable table_;
};

struct DiagonalRow {
  DeciderIndex d = 0;
  int table_value = 0;  // A_T(d, d)
  int g = 0;
  std::uint64_t budget = 0;
  std::uint64_t g_cost = 0;
  bool timed_out = false;
};

// One pass over d < n evaluating the diagonal cell and g independently.
inline std::vector<DiagonalRow> diagonal_rows(const DiagonalDecider& diag, std::uint64_t n,
                                              unsigned workers = 0) {
  std::vector<DiagonalRow> rows(n);
  parallel_for_index(n, workers, [&](std::uint64_t d) {
    PredictionTable::Cell cell = diag.table().predict(d, d);
    DiagonalDecider::GValue g = diag.g_value(d);
    rows[d] = {d, cell.value, g.value, g.budget, g.host_steps, g.timed_out};
  });
  return rows;
}

struct EscapeReport {
  std::uint64_t checked = 0;
  std::vector<DeciderIndex> violations;  // indices where g(d) == A_T(d, d)
};

inline EscapeReport escape_report(const std::vector<DiagonalRow>& rows) {
  EscapeReport report;
  report.checked = rows.size();
  for (const DiagonalRow& row : rows) {
    if (row.g == row.table_value) report.violations.push_back(row.d);
  }
  return report;
}

inline EscapeReport verify_escape(const DiagonalDecider& diag, std::uint64_t n,
                                  unsigned workers = 0) {
  return escape_report(diagonal_rows(diag, n, workers));
}

struct CostProfile {
  std::vector<DiagonalRow> rows;
  Ratio max_envelope_ratio{0, 1};  // max over k of g_cost / T(2|k|)^2
};

inline CostProfile cost_profile(std::vector<DiagonalRow> rows, const BudgetPolicy& policy) {
  CostProfile profile;
  profile.rows = std::move(rows);
  for (const DiagonalRow& row : profile.rows) {
    using u128 = unsigned __int128;
    std::uint64_t t = policy(2 * bit_length(row.d));
    u128 den = static_cast<u128>(t) * t;
    std::uint64_t den64 = den > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(den);
    Ratio r{row.g_cost, den64};
    if (profile.max_envelope_ratio < r) profile.max_envelope_ratio = r;
  }
  return profile;
}

inline CostProfile g_cost_profile(const DiagonalDecider& diag, std::uint64_t n,
                                  unsigned workers = 0) {
  return cost_profile(diagonal_rows(diag, n, workers), diag.table().policy);
}

inline std::string diagonal_csv(const std::vector<DiagonalRow>& rows) {
  std::string csv = "d,a_t_diag,g,budget,g_cost,timed_out\n";
  for (const DiagonalRow& row : rows) {
    csv += std::to_string(row.d);
    csv += ',';
    csv += std::to_string(row.table_value);
    csv += ',';
    csv += std::to_string(row.g);
    csv += ',';
    csv += std::to_string(row.budget);
    csv += ',';
    csv += std::to_string(row.g_cost);
    csv += ',';
    csv += row.timed_out ? '1' : '0';
    csv += '\n';
  }
  return csv;
}

}  // namespace deciderlab
