// deciderlab: run machines, walk the enumeration, and reproduce every
// experiment (diagonal escape, halting statistics, simulation overhead, the
// four-question self-test) from the command line.
//
// Exit codes: 0 success, 1 usage/parse error, 2 still running at the budget
// (run only), 3 property violation (diagonal only).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deciderlab/approx.hpp"
#include "deciderlab/budget.hpp"
#include "deciderlab/diagonal.hpp"
#include "deciderlab/enumeration.hpp"
#include "deciderlab/json_io.hpp"
#include "deciderlab/machinefile.hpp"
#include "deciderlab/machines.hpp"
#include "deciderlab/rng.hpp"
#include "deciderlab/selftest.hpp"
#include "deciderlab/universal.hpp"
#include "deciderlab/vm.hpp"

namespace {

using namespace deciderlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStillRunning = 2;
constexpr int kExitViolation = 3;

struct CommonOptions {
  std::string budget_poly = "1,0,100";
  std::string format = "json";
  std::string out_path;
  unsigned workers = 0;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_workers = true) {
  cmd->add_option("--budget-poly", opt.budget_poly,
                  "budget polynomial a,b,c for T(n) = a*n^2 + b*n + c")
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
  if (with_workers) {
    cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
  }
  cmd->add_option("--seed", opt.seed, "seed for sampled experiments")->capture_default_str();
}

std::optional<BudgetPolicy> parse_budget_poly(const std::string& text) {
  BudgetPolicy policy;
  std::uint64_t parts[3];
  std::stringstream ss{text};
  std::string token;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, token, ',')) return std::nullopt;
    try {
      parts[i] = std::stoull(token);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (std::getline(ss, token, ',')) return std::nullopt;
  policy.quadratic = parts[0];
  policy.linear = parts[1];
  policy.constant = parts[2];
  if (!policy.valid()) return std::nullopt;
  return policy;
}

bool is_bit_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

int emit(const CommonOptions& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << opt.out_path << " for writing\n";
    return kExitUsage;
  }
  out << payload;
  return kExitOk;
}

std::optional<MachineDescription> load_machinefile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ParseOutcome parsed = parse_machinefile(buffer.str());
  if (!parsed.ok()) {
    for (const ParseError& e : parsed.errors) {
      std::cerr << path << ":" << e.line << ":" << e.column << ": " << e.message;
      if (!e.token.empty()) std::cerr << " (near '" << e.token << "')";
      std::cerr << "\n";
    }
    return std::nullopt;
  }
  return parsed.doc->machine;
}

// ---- run ------------------------------------------------------------------

int cmd_run(const std::string& path, const std::string& input, std::uint64_t budget) {
  if (!is_bit_string(input)) {
    std::cerr << "error: input must be a string of 0s and 1s\n";
    return kExitUsage;
  }
  std::optional<MachineDescription> machine = load_machinefile(path);
  if (!machine) return kExitUsage;
  RunOutcome outcome = run(*machine, input, budget);
  if (outcome.decided()) {
    std::cout << "Decided " << outcome.value() << " in " << outcome.steps
              << (outcome.steps == 1 ? " step" : " steps") << "\n";
    return kExitOk;
  }
  std::cout << "StillRunning at " << outcome.steps << "\n";
  return kExitStillRunning;
}

// ---- enumerate ------------------------------------------------------------

int cmd_enumerate(std::uint64_t start, std::uint64_t n, const CommonOptions& opt) {
  std::string payload;
  for (DeciderIndex d = start; d < start + n; ++d) {
    std::string bits = index_to_bits(d);
    bool fallback = !is_valid_encoding(bits);
    if (opt.format == "json") {
      json row{{"index", d}, {"bits", bits}, {"fallback", fallback}};
      row["source"] = fallback ? json(nullptr) : json(serialize_machine(bits_to_machine(bits)));
      payload += row.dump();
      payload += '\n';
    } else if (opt.format == "csv") {
      payload += std::to_string(d) + "," + bits + "," + (fallback ? "1" : "0") + "\n";
    } else {
      payload += std::to_string(d);
      payload += '\t';
      payload += bits;
      payload += '\t';
      if (fallback) {
        payload += "trivial-rejector-fallback";
      } else {
        std::string source = serialize_machine(bits_to_machine(bits));
        while (!source.empty() && source.back() == '\n') source.pop_back();
        std::replace(source.begin(), source.end(), '\n', ';');
        payload += source;
      }
      payload += '\n';
    }
  }
  if (opt.format == "csv") payload = "index,bits,fallback\n" + payload;
  return emit(opt, payload);
}

// ---- diagonal ---------------------------------------------------------------

int cmd_diagonal(std::uint64_t n, const BudgetPolicy& policy, const CommonOptions& opt) {
  DiagonalDecider diag(policy);
  std::vector<DiagonalRow> rows = diagonal_rows(diag, n, opt.workers);
  EscapeReport escape = escape_report(rows);
  CostProfile profile = cost_profile(std::move(rows), policy);
  json summary = diagonal_summary_json(escape, profile, policy);

  std::string payload;
  if (opt.format == "csv") {
    payload = diagonal_csv(profile.rows);
  } else if (opt.format == "json") {
    payload = summary.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "diagonal escape over d < " << escape.checked << ": "
         << (escape.violations.empty() ? "no violations" : "VIOLATED") << "\n"
         << "max g-cost / T(2|k|)^2 = " << profile.max_envelope_ratio.num << "/"
         << profile.max_envelope_ratio.den << " = " << profile.max_envelope_ratio.to_double()
         << "\n";
    payload = text.str();
  }
  int rc = emit(opt, payload);
  if (rc != kExitOk) return rc;
  if (!escape.violations.empty()) {
    std::cerr << "error: diagonal escape violated at " << escape.violations.size()
              << " indices\n";
    return kExitViolation;
  }
  return kExitOk;
}

// ---- halting-stats ----------------------------------------------------------

int cmd_halting_stats(std::uint64_t n, const std::vector<std::uint64_t>& budgets,
                      InputPolicy input_policy,
                      const std::vector<std::uint64_t>& predictor_budgets,
                      std::uint64_t predictor_ref, const CommonOptions& opt) {
  for (std::size_t i = 0; i + 1 < budgets.size(); ++i) {
    if (budgets[i] >= budgets[i + 1]) {
      std::cerr << "error: --budgets must be strictly ascending\n";
      return kExitUsage;
    }
  }
  std::uint64_t max_budget = std::max(budgets.back(), predictor_ref);
  std::vector<HaltRecord> records = survey(n, input_policy, max_budget, opt.workers);
  HaltingCurve curve = curve_from_records(records, budgets, input_policy);

  json summary = to_json(curve);
  summary["max_budget"] = max_budget;
  if (!predictor_budgets.empty()) {
    json scores = json::array();
    for (std::uint64_t b_p : predictor_budgets) {
      if (b_p >= predictor_ref) {
        std::cerr << "error: predictor budgets must stay below --predictor-ref\n";
        return kExitUsage;
      }
      scores.push_back(to_json(score_from_records(records, b_p, predictor_ref)));
    }
    summary["predictor"] = scores;
  }

  std::string payload;
  if (opt.format == "csv") {
    payload = halting_csv(records);
  } else if (opt.format == "json") {
    payload = summary.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "halting curve over the first " << n << " indices (" << input_policy_name(input_policy)
         << " inputs):\n";
    for (const HaltingCurve::Point& p : curve.points) {
      text << "  budget " << p.budget << ": " << p.halted_count << "/" << n << " halted ("
           << p.fraction << ")\n";
    }
    payload = text.str();
  }
  return emit(opt, payload);
}

// ---- overhead ---------------------------------------------------------------

int cmd_overhead(std::optional<std::uint64_t> self_index, const std::string& machine_path,
                 std::vector<std::string> inputs, std::uint64_t budget_override,
                 std::uint64_t headroom, const BudgetPolicy& policy, const CommonOptions& opt) {
  std::optional<UniversalDecider> decider;
  if (self_index) {
    decider.emplace(*self_index, policy);
  } else {
    std::optional<MachineDescription> machine = load_machinefile(machine_path);
    if (!machine) return kExitUsage;
    std::optional<DeciderIndex> index = canonical_index(*machine);
    if (!index) {
      std::cerr << "error: machine encoding exceeds the index range (too many states)\n";
      return kExitUsage;
    }
    decider.emplace(*index, policy);
  }
  if (inputs.empty()) inputs.push_back("");
  for (const std::string& k : inputs) {
    if (!is_bit_string(k)) {
      std::cerr << "error: inputs must be strings of 0s and 1s\n";
      return kExitUsage;
    }
  }

  struct Row {
    std::string input;
    OverheadReport report;
  };
  std::vector<Row> table;
  std::vector<Ratio> ratios;
  for (const std::string& k : inputs) {
    std::uint64_t budget = budget_override
                               ? budget_override
                               : std::max<std::uint64_t>(
                                     1, policy(bit_length(decider->self_index()) + k.size()));
    OverheadReport report = decider->overhead_report(k, budget, headroom);
    if (report.ratio) ratios.push_back(*report.ratio);
    table.push_back({k, report});
  }
  std::sort(ratios.begin(), ratios.end());
  std::optional<Ratio> median;
  if (!ratios.empty()) median = ratios[(ratios.size() - 1) / 2];  // lower median

  std::string payload;
  if (opt.format == "csv") {
    payload =
        "input,direct_verdict,direct_steps,direct_host,selfsim_verdict,selfsim_steps,"
        "selfsim_host,ratio_num,ratio_den\n";
    for (const Row& row : table) {
      payload += row.input + "," + verdict_name(row.report.direct.verdict) + "," +
                 std::to_string(row.report.direct.simulated_steps) + "," +
                 std::to_string(row.report.direct.host_steps) + "," +
                 verdict_name(row.report.selfsim.verdict) + "," +
                 std::to_string(row.report.selfsim.simulated_steps) + "," +
                 std::to_string(row.report.selfsim.host_steps) + ",";
      if (row.report.ratio) {
        payload += std::to_string(row.report.ratio->num) + "," +
                   std::to_string(row.report.ratio->den);
      } else {
        payload += ",";
      }
      payload += '\n';
    }
  } else if (opt.format == "json") {
    json rows = json::array();
    for (const Row& row : table) {
      json j = to_json(row.report);
      j["input"] = row.input;
      rows.push_back(j);
    }
    json doc{{"self_index", decider->self_index()}, {"rows", rows}};
    doc["median_ratio"] = median ? to_json(*median) : json(nullptr);
    payload = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "self index " << decider->self_index() << " (|encoding| = "
         << bit_length(decider->self_index()) << " bits)\n";
    for (const Row& row : table) {
      text << "  input '" << row.input << "': direct " << verdict_name(row.report.direct.verdict)
           << " host=" << row.report.direct.host_steps << "; selfsim "
           << verdict_name(row.report.selfsim.verdict)
           << " host=" << row.report.selfsim.host_steps;
      if (row.report.ratio) {
        text << "; ratio " << row.report.ratio->num << "/" << row.report.ratio->den << " = "
             << row.report.ratio->to_double();
      } else {
        text << "; ratio undefined";
      }
      text << "\n";
    }
    if (median) {
      text << "median ratio " << median->num << "/" << median->den << " = " << median->to_double()
           << "\n";
    }
    payload = text.str();
  }
  return emit(opt, payload);
}

// ---- selftest ---------------------------------------------------------------

const char* question_text(Question q) {
  switch (q) {
    case Question::Q1: return "Am I a decider?";
    case Question::Q2: return "Do I decide by recursive reasoning?";
    case Question::Q3: return "Can I model and simulate, at least partially, my own behavior?";
    case Question::Q4: return "Can I predict my own decisions beforehand?";
  }
  return "";
}

std::vector<std::string> transcript_lines(const AgentProfile& profile, const TestVerdict& v) {
  auto yesno = [](bool b) { return b ? "Yes" : "No"; };
  std::vector<std::string> lines;
  lines.push_back("testee: " + profile.name + " (" + std::string(agent_kind_name(profile.kind)) +
                  ")");
  lines.push_back(std::string("Q1: ") + question_text(Question::Q1) + " -- " + yesno(v.answers.q1));
  lines.push_back(std::string("Q2: ") + question_text(Question::Q2) + " -- " + yesno(v.answers.q2));
  lines.push_back(std::string("Q3: ") + question_text(Question::Q3) + " -- " + yesno(v.answers.q3));
  lines.push_back(std::string("Q4: ") + question_text(Question::Q4) + " -- " + yesno(v.answers.q4));
  switch (v.outcome) {
    case Outcome::BelievesFree:
      lines.push_back("verdict: likely believes it has free will");
      break;
    case Outcome::Lying:
      lines.push_back("verdict: lying (Yes to Q4 after Yes to Q1-Q3)");
      break;
    case Outcome::NotAttributed:
      lines.push_back("verdict: free will not attributed (failed Q" +
                      std::to_string(static_cast<int>(*v.failed)) + ")");
      break;
  }
  return lines;
}

int cmd_selftest(const std::string& builtin, const std::string& profile_path, bool empirical,
                 std::uint64_t sample_size, const std::string& challenge_override,
                 std::uint64_t headroom, const BudgetPolicy& policy, const CommonOptions& opt) {
  AgentProfile profile;
  if (!profile_path.empty()) {
    std::ifstream in(profile_path);
    if (!in) {
      std::cerr << "error: cannot read " << profile_path << "\n";
      return kExitUsage;
    }
    try {
      profile = profile_from_json(json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "error: bad profile: " << e.what() << "\n";
      return kExitUsage;
    }
  } else if (builtin == "thermostat") {
    profile = thermostat_profile();
  } else if (builtin == "os") {
    profile = os_profile();
  } else if (builtin == "cheater") {
    profile = cheater_profile();
  } else {
    std::cerr << "error: unknown profile '" << builtin
              << "' (expected thermostat, os, cheater or --profile FILE)\n";
    return kExitUsage;
  }
  if (!profile_valid(profile)) {
    std::cerr << "error: profile violates its invariants\n";
    return kExitUsage;
  }

  TestVerdict verdict;
  if (empirical) {
    if (!profile.machine) {
      std::cerr << "error: --empirical needs a profile with a machine index\n";
      return kExitUsage;
    }
    SplitMix64 rng(opt.seed);
    std::vector<std::pair<DeciderIndex, std::string>> sample;
    sample.reserve(sample_size);
    for (std::uint64_t i = 0; i < sample_size; ++i) {
      sample.emplace_back(rng.below(std::uint64_t{1} << 17), rng.bit_string(rng.below(7)));
    }
    std::string challenge =
        challenge_override.empty() ? index_to_bits(*profile.machine) : challenge_override;
    if (!is_bit_string(challenge)) {
      std::cerr << "error: challenge must be a string of 0s and 1s\n";
      return kExitUsage;
    }
    verdict = administer_empirical(profile, sample, challenge, policy, headroom);
  } else {
    verdict = administer(profile);
  }

  std::string payload;
  if (opt.format == "json") {
    json doc = to_json(verdict);
    doc["profile"] = to_json(profile);
    doc["transcript"] = transcript_lines(profile, verdict);
    payload = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    for (const std::string& line : transcript_lines(profile, verdict)) text << line << "\n";
    text << to_json(verdict).dump(2) << "\n";
    payload = text.str();
  }
  return emit(opt, payload);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deciderlab: budgeted Turing-machine deciders, diagonalization and the free-will self-test"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run a .tmm machine on an input");
  std::string run_path, run_input;
  std::uint64_t run_budget = 1000;
  run_cmd->add_option("machinefile", run_path, ".tmm source")->required();
  run_cmd->add_option("--input", run_input, "input bits")->capture_default_str();
  run_cmd->add_option("--budget", run_budget, "step budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "walk the canonical enumeration");
  CommonOptions enum_opt;
  std::uint64_t enum_n = 100;
  std::uint64_t enum_start = 0;
  enum_cmd->add_option("--n", enum_n, "number of indices")->capture_default_str();
  enum_cmd->add_option("--start", enum_start, "first index (the live band starts at 98303)")
      ->capture_default_str();
  add_common(enum_cmd, enum_opt, false);

  // diagonal
  auto* diag_cmd = app.add_subcommand("diagonal", "diagonal escape and g cost profile");
  CommonOptions diag_opt;
  std::uint64_t diag_n = 1000;
  diag_cmd->add_option("--n", diag_n, "indices to check")->capture_default_str();
  add_common(diag_cmd, diag_opt);

  // halting-stats
  auto* halt_cmd = app.add_subcommand("halting-stats", "dovetailed halting statistics");
  CommonOptions halt_opt;
  std::uint64_t halt_n = 10000;
  std::string halt_budgets = "1,10,100,1000,10000";
  std::string halt_policy_name = "own-index";
  std::string predictor_budgets_text;
  std::uint64_t predictor_ref = 0;
  halt_cmd->add_option("--n", halt_n, "population: first n indices")->capture_default_str();
  halt_cmd->add_option("--budgets", halt_budgets, "ascending step budgets")
      ->capture_default_str();
  halt_cmd->add_option("--input-policy", halt_policy_name, "empty or own-index")
      ->check(CLI::IsMember({"empty", "own-index"}))
      ->capture_default_str();
  halt_cmd->add_option("--predictor-budgets", predictor_budgets_text,
                       "also score budget-limited predictors at these budgets");
  halt_cmd->add_option("--predictor-ref", predictor_ref,
                       "reference budget for predictor scoring (default: last of --budgets)");
  add_common(halt_cmd, halt_opt);

  // overhead
  auto* over_cmd = app.add_subcommand("overhead", "direct decision vs self-simulation cost");
  CommonOptions over_opt;
  std::uint64_t over_self_index = 0;
  bool over_has_index = false;
  std::string over_machine;
  std::vector<std::string> over_inputs;
  std::uint64_t over_budget = 0;
  std::uint64_t over_headroom = kDefaultOverheadHeadroom;
  auto* idx_opt = over_cmd->add_option("--self-index", over_self_index,
                                       "decider index to question");
  over_cmd->add_option("--machine", over_machine, ".tmm machine to question (canonical index)")
      ->excludes(idx_opt);
  over_cmd->add_option("--input", over_inputs, "challenge input bits (repeatable)");
  over_cmd->add_option("--budget", over_budget, "direct-side budget (default: T(|d|+|k|))");
  over_cmd->add_option("--headroom", over_headroom,
                       "budget multiplier for the self-simulation side")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(over_cmd, over_opt, false);

  // selftest
  auto* self_cmd = app.add_subcommand("selftest", "administer the four-question test");
  CommonOptions self_opt;
  std::string self_builtin, self_profile_path, self_challenge;
  bool self_empirical = false;
  std::uint64_t self_sample = 100, self_headroom = kDefaultOverheadHeadroom;
  self_cmd->add_option("testee", self_builtin, "built-in testee: thermostat, os or cheater");
  self_cmd->add_option("--profile", self_profile_path, "load an agent profile from JSON");
  self_cmd->add_flag("--empirical", self_empirical, "audit Q3/Q4 with measurements");
  self_cmd->add_option("--sample", self_sample, "empirical sample size")->capture_default_str();
  self_cmd->add_option("--challenge", self_challenge,
                       "challenge input for Q4 (default: the machine's own bits)");
  self_cmd->add_option("--headroom", self_headroom, "budget multiplier for audits")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(self_cmd, self_opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_path, run_input, run_budget);
    }

    if (enum_cmd->parsed()) {
      return cmd_enumerate(enum_start, enum_n, enum_opt);
    }

    if (diag_cmd->parsed()) {
      std::optional<BudgetPolicy> policy = parse_budget_poly(diag_opt.budget_poly);
      if (!policy) {
        std::cerr << "error: bad --budget-poly (need a,b,c with a+b >= 1)\n";
        return kExitUsage;
      }
      return cmd_diagonal(diag_n, *policy, diag_opt);
    }

    if (halt_cmd->parsed()) {
      std::vector<std::uint64_t> budgets;
      std::stringstream ss{halt_budgets};
      std::string token;
      while (std::getline(ss, token, ',')) {
        try {
          budgets.push_back(std::stoull(token));
        } catch (...) {
          std::cerr << "error: bad --budgets\n";
          return kExitUsage;
        }
      }
      if (budgets.empty() || budgets.front() == 0) {
        std::cerr << "error: budgets must be positive\n";
        return kExitUsage;
      }
      std::vector<std::uint64_t> predictor_budgets;
      if (!predictor_budgets_text.empty()) {
        std::stringstream ps{predictor_budgets_text};
        while (std::getline(ps, token, ',')) {
          try {
            predictor_budgets.push_back(std::stoull(token));
          } catch (...) {
            std::cerr << "error: bad --predictor-budgets\n";
            return kExitUsage;
          }
        }
      }
      if (predictor_ref == 0) predictor_ref = budgets.back();
      InputPolicy policy =
          halt_policy_name == "empty" ? InputPolicy::Empty : InputPolicy::OwnIndex;
      return cmd_halting_stats(halt_n, budgets, policy, predictor_budgets, predictor_ref,
                               halt_opt);
    }

    if (over_cmd->parsed()) {
      over_has_index = idx_opt->count() > 0;
      if (!over_has_index && over_machine.empty()) {
        std::cerr << "error: need --self-index or --machine\n";
        return kExitUsage;
      }
      std::optional<BudgetPolicy> policy = parse_budget_poly(over_opt.budget_poly);
      if (!policy) {
        std::cerr << "error: bad --budget-poly (need a,b,c with a+b >= 1)\n";
        return kExitUsage;
      }
      return cmd_overhead(over_has_index ? std::optional<std::uint64_t>(over_self_index)
                                         : std::nullopt,
                          over_machine, over_inputs, over_budget, over_headroom, *policy,
                          over_opt);
    }

    if (self_cmd->parsed()) {
      std::optional<BudgetPolicy> policy = parse_budget_poly(self_opt.budget_poly);
      if (!policy) {
        std::cerr << "error: bad --budget-poly (need a,b,c with a+b >= 1)\n";
        return kExitUsage;
      }
      if (self_builtin.empty() && self_profile_path.empty()) {
        std::cerr << "error: name a built-in profile or pass --profile FILE\n";
        return kExitUsage;
      }
      return cmd_selftest(self_builtin, self_profile_path, self_empirical, self_sample,
                          self_challenge, self_headroom, *policy, self_opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
