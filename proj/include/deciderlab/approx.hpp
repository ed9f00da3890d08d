#pragma once

// Dovetailing halting statistics over the enumeration: one budgeted run per
// machine records its first halt, and every curve point or predictor score is
// derived from those records. Ground truth here is always relative to the
// reference budget; true halting stays out of reach.

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "deciderlab/enumeration.hpp"
#include "deciderlab/parallel.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab {

enum class InputPolicy { Empty, OwnIndex };

inline std::string_view input_policy_name(InputPolicy p) {
  return p == InputPolicy::Empty ? "empty" : "own-index";
}

struct HaltRecord {
  DeciderIndex index = 0;
  bool halted = false;
  std::uint64_t first_halt_step = 0;  // 0 when the machine outlived the budget
  int value = 0;                      // 0 when the machine outlived the budget

  friend bool operator==(const HaltRecord&, const HaltRecord&) = default;
};

inline HaltRecord survey_one(const MachineDescription& m, std::string_view input,
                             std::uint64_t max_budget, DeciderIndex label) {
  RunOutcome outcome = run(m, input, max_budget);
  HaltRecord record;
  record.index = label;
  record.halted = outcome.decided();
  record.first_halt_step = outcome.decided() ? outcome.steps : 0;
  record.value = outcome.decided() ? outcome.value() : 0;
  return record;
}

// One pass over the first n indices; embarrassingly parallel, aggregated in
// index order regardless of worker count.
inline std::vector<HaltRecord> survey(std::uint64_t n, InputPolicy policy,
                                      std::uint64_t max_budget, unsigned workers = 0) {
  std::vector<HaltRecord> records(n);
  parallel_for_index(n, workers, [&](std::uint64_t d) {
    std::string input = policy == InputPolicy::OwnIndex ? index_to_bits(d) : std::string();
    records[d] = survey_one(machine_for_index(d), input, max_budget, d);
  });
  return records;
}

struct HaltingCurve {
  std::uint64_t population = 0;
  InputPolicy input_policy = InputPolicy::OwnIndex;
  struct Point {
    std::uint64_t budget = 0;
    std::uint64_t halted_count = 0;
    double fraction = 0.0;
  };
  std::vector<Point> points;
};

inline HaltingCurve curve_from_records(const std::vector<HaltRecord>& records,
                                       const std::vector<std::uint64_t>& budgets,
                                       InputPolicy policy) {
  HaltingCurve curve;
  curve.population = records.size();
  curve.input_policy = policy;
  for (std::size_t i = 0; i + 1 < budgets.size(); ++i) {
    assert(budgets[i] < budgets[i + 1]);
  }
  for (std::uint64_t budget : budgets) {
    std::uint64_t halted = 0;
    for (const HaltRecord& r : records) {
      if (r.halted && r.first_halt_step <= budget) ++halted;
    }
    double fraction = records.empty() ? 0.0
                                      : static_cast<double>(halted) /
                                            static_cast<double>(records.size());
    curve.points.push_back({budget, halted, fraction});
  }
  return curve;
}

// Records are surveyed once at the largest budget; every point reads the
// same pass.
inline HaltingCurve halting_curve(std::uint64_t n, const std::vector<std::uint64_t>& budgets,
                                  InputPolicy policy, unsigned workers = 0) {
  assert(!budgets.empty());
  std::vector<HaltRecord> records = survey(n, policy, budgets.back(), workers);
  return curve_from_records(records, budgets, policy);
}

struct PredictorScore {
  std::uint64_t predictor_budget = 0;
  std::uint64_t reference_budget = 0;
  std::uint64_t population = 0;
  std::uint64_t disagreements = 0;

  double fraction() const {
    return population == 0 ? 0.0
                           : static_cast<double>(disagreements) / static_cast<double>(population);
  }
};

// Verdict at budget b: the decided value when the first halt is within b,
// else 0 (silence means No). Disagreements are exactly the Yes answers that
// arrive after the predictor budget.
inline PredictorScore score_from_records(const std::vector<HaltRecord>& records,
                                         std::uint64_t b_p, std::uint64_t b_ref) {
  assert(b_ref > b_p);
  PredictorScore score;
  score.predictor_budget = b_p;
  score.reference_budget = b_ref;
  score.population = records.size();
  for (const HaltRecord& r : records) {
    int verdict_p = (r.halted && r.first_halt_step <= b_p) ? r.value : 0;
    int verdict_ref = r.halted ? r.value : 0;
    if (verdict_p != verdict_ref) ++score.disagreements;
  }
  return score;
}

inline PredictorScore predictor_failure(std::uint64_t n, std::uint64_t b_p, std::uint64_t b_ref,
                                        unsigned workers = 0) {
  std::vector<HaltRecord> records = survey(n, InputPolicy::OwnIndex, b_ref, workers);
  return score_from_records(records, b_p, b_ref);
}

inline std::string halting_csv(const std::vector<HaltRecord>& records) {
  std::string csv = "index,halted,first_halt_step,value\n";
  for (const HaltRecord& r : records) {
    csv += std::to_string(r.index);
    csv += ',';
    csv += r.halted ? '1' : '0';
    csv += ',';
    csv += std::to_string(r.first_halt_step);
    csv += ',';
    csv += std::to_string(r.value);
    csv += '\n';
  }
  return csv;
}

}  // namespace deciderlab
