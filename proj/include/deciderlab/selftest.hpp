#pragma once

// The self-administered four-question test for a sense of free will.
//   Q1: Am I a decider?
//   Q2: Do I decide by recursive reasoning?
//   Q3: Can I model and simulate, at least partially, my own behavior?
//   Q4: Can I predict my own decisions beforehand?
// Verdict: Yes/Yes/Yes/No believes itself free; Yes/Yes/Yes/Yes is lying;
// any other vector fails at the first No among Q1-Q3.
//
// administer() trusts the declared answers (the honor system); the empirical
// variant audits Q3 by checking the agent's simulation answers against direct
// runs and Q4 by comparing self-simulation cost against deciding directly.
// The kind field is what the agent mechanically is (it fixes how simulation
// queries get answered); the boolean fields are its testimony.

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deciderlab/budget.hpp"
#include "deciderlab/enumeration.hpp"
#include "deciderlab/machines.hpp"
#include "deciderlab/universal.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab {

enum class AgentKind { Thermostat, FiniteAutomaton, UniversalMachine, Custom };

inline std::string_view agent_kind_name(AgentKind k) {
  switch (k) {
    case AgentKind::Thermostat: return "thermostat";
    case AgentKind::FiniteAutomaton: return "finite-automaton";
    case AgentKind::UniversalMachine: return "universal-machine";
    case AgentKind::Custom: return "custom";
  }
  return "custom";
}

struct AgentProfile {
  std::string name;
  AgentKind kind = AgentKind::Custom;
  bool is_decider = false;
  bool recursive_reasoning = false;
  bool self_model = false;
  bool claims_self_prediction = false;
  std::optional<DeciderIndex> machine;  // present when realized in the enumeration
};

// Thermostats must really be two-state automata.
inline bool profile_valid(const AgentProfile& p) {
  if (p.kind == AgentKind::Thermostat) {
    if (!p.machine) return false;
    if (machine_for_index(*p.machine).state_count != 2) return false;
  }
  return true;
}

enum class Question : int { Q1 = 1, Q2 = 2, Q3 = 3, Q4 = 4 };

struct Answers {
  bool q1 = false;
  bool q2 = false;
  bool q3 = false;
  bool q4 = false;

  friend bool operator==(const Answers&, const Answers&) = default;
};

enum class Outcome { BelievesFree, NotAttributed, Lying };

struct FidelityEvidence {
  std::uint64_t sample_size = 0;
  std::uint64_t decided = 0;  // pairs whose direct run reached a verdict
  std::uint64_t matched = 0;
  bool inconclusive = false;  // no pair in the sample decided
};

struct OverheadEvidence {
  std::string challenge;
  CostedDecision direct;
  CostedDecision selfsim;
  std::optional<Ratio> ratio;
};

struct Evidence {
  std::optional<FidelityEvidence> q3;
  std::optional<OverheadEvidence> q4;
};

struct TestVerdict {
  Answers answers;
  Outcome outcome = Outcome::NotAttributed;
  std::optional<Question> failed;  // set iff outcome == NotAttributed
  std::optional<Evidence> evidence;
};

// The full 16-row truth table in one place.
inline std::pair<Outcome, std::optional<Question>> verdict_for(const Answers& a) {
  if (!a.q1) return {Outcome::NotAttributed, Question::Q1};
  if (!a.q2) return {Outcome::NotAttributed, Question::Q2};
  if (!a.q3) return {Outcome::NotAttributed, Question::Q3};
  if (a.q4) return {Outcome::Lying, std::nullopt};
  return {Outcome::BelievesFree, std::nullopt};
}

// Declarative mode: maps capability claims straight onto the four answers.
inline TestVerdict administer(const AgentProfile& profile) {
  assert(profile_valid(profile));
  TestVerdict verdict;
  verdict.answers = {profile.is_decider, profile.recursive_reasoning, profile.self_model,
                     profile.claims_self_prediction};
  auto [outcome, failed] = verdict_for(verdict.answers);
  verdict.outcome = outcome;
  verdict.failed = failed;
  return verdict;
}

namespace detail {

// What the agent answers when asked to simulate decider d on input k. A
// universal agent runs the costed interpreter; anything simpler can only run
// its own machine on the raw input and hope.
inline std::optional<int> agent_simulation_answer(const AgentProfile& profile,
                                                  const UniversalDecider& self,
                                                  DeciderIndex d, std::string_view k,
                                                  std::uint64_t budget) {
  if (profile.kind == AgentKind::UniversalMachine) {
    CostedDecision sim = self.decide(d, k, budget);
    return sim.decided() ? std::optional<int>(sim.value()) : std::nullopt;
  }
  RunOutcome own = run(self.self_machine(), k, budget);
  return own.decided() ? std::optional<int>(own.value()) : std::nullopt;
}

}  // namespace detail

// Audit mode. Q1/Q2 stay declared; Q3 is the measured fidelity of the agent's
// simulation answers over the sample; Q4 is Yes only if self-simulation
// produced the decision at lower host cost than deciding directly (it never
// does for machines in this framework).
inline TestVerdict administer_empirical(const AgentProfile& profile,
                                        const std::vector<std::pair<DeciderIndex, std::string>>& sample,
                                        std::string_view challenge,
                                        BudgetPolicy policy = {},
                                        std::uint64_t headroom = kDefaultOverheadHeadroom) {
  assert(profile_valid(profile));
  assert(profile.machine.has_value());
  assert(!sample.empty());

  TestVerdict verdict;
  verdict.answers.q1 = profile.is_decider;
  verdict.answers.q2 = profile.recursive_reasoning;
  verdict.answers.q3 = profile.self_model;
  verdict.answers.q4 = profile.claims_self_prediction;

  if (verdict.answers.q1 && verdict.answers.q2) {
    UniversalDecider self(*profile.machine, policy);
    Evidence evidence;

    FidelityEvidence fidelity;
    fidelity.sample_size = sample.size();
    for (const auto& [d, input] : sample) {
      std::uint64_t budget = policy(bit_length(d) + input.size());
      RunOutcome direct = run(machine_for_index(d), input, budget);
      if (!direct.decided()) continue;
      ++fidelity.decided;
      std::optional<int> answer =
          detail::agent_simulation_answer(profile, self, d, input, budget * headroom);
      if (answer && *answer == direct.value()) ++fidelity.matched;
    }
    fidelity.inconclusive = fidelity.decided == 0;
    // The audit checks claims: it can expose a false Yes but never upgrades a
    // declared No, so a thermostat stays a thermostat under any sample.
    verdict.answers.q3 =
        profile.self_model && !fidelity.inconclusive && fidelity.matched == fidelity.decided;
    evidence.q3 = fidelity;

    std::uint64_t challenge_budget = policy(bit_length(self.self_index()) + challenge.size());
    OverheadReport overhead = self.overhead_report(challenge, challenge_budget, headroom);
    verdict.answers.q4 = overhead.direct.decided() && overhead.selfsim.decided() &&
                         overhead.selfsim.host_steps < overhead.direct.host_steps;
    evidence.q4 = OverheadEvidence{std::string(challenge), overhead.direct, overhead.selfsim,
                                   overhead.ratio};

    verdict.evidence = std::move(evidence);
  }

  auto [outcome, failed] = verdict_for(verdict.answers);
  verdict.outcome = outcome;
  verdict.failed = failed;
  return verdict;
}

// Built-in testees.

inline AgentProfile thermostat_profile() {
  AgentProfile p;
  p.name = "thermostat";
  p.kind = AgentKind::Thermostat;
  p.is_decider = true;
  p.recursive_reasoning = true;
  p.self_model = false;
  p.claims_self_prediction = false;
  p.machine = canonical_index(thermostat_automaton());
  return p;
}

inline AgentProfile os_profile() {
  AgentProfile p;
  p.name = "os";
  p.kind = AgentKind::UniversalMachine;
  p.is_decider = true;
  p.recursive_reasoning = true;
  p.self_model = true;
  p.claims_self_prediction = false;
  p.machine = canonical_index(blank_scanner());
  return p;
}

inline AgentProfile cheater_profile() {
  AgentProfile p;
  p.name = "cheater";
  p.kind = AgentKind::Custom;
  p.is_decider = true;
  p.recursive_reasoning = true;
  p.self_model = true;
  p.claims_self_prediction = true;  // the giveaway
  p.machine = canonical_index(trivial_rejector());
  return p;
}

}  // namespace deciderlab
