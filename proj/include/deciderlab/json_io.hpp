#pragma once

// JSON views of the report types. Keys serialize in lexicographic order and
// every number is derived from deterministic integer state, so repeated runs
// emit byte-identical documents.

#include <optional>
#include <string>

#include <json.hpp>

#include "deciderlab/approx.hpp"
#include "deciderlab/budget.hpp"
#include "deciderlab/diagonal.hpp"
#include "deciderlab/selftest.hpp"
#include "deciderlab/universal.hpp"

namespace deciderlab {

using nlohmann::json;

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::No: return "no";
    case Verdict::Yes: return "yes";
    case Verdict::StillRunning: return "still-running";
  }
  return "still-running";
}

inline json to_json(const BudgetPolicy& p) {
  return json{{"quadratic", p.quadratic}, {"linear", p.linear}, {"constant", p.constant}};
}

inline json to_json(const CostedDecision& d) {
  return json{{"verdict", verdict_name(d.verdict)},
              {"simulated_steps", d.simulated_steps},
              {"host_steps", d.host_steps}};
}

inline json to_json(const Ratio& r) {
  return json{{"num", r.num}, {"den", r.den}, {"value", r.to_double()}};
}

inline json to_json(const OverheadReport& r) {
  json j{{"direct", to_json(r.direct)}, {"selfsim", to_json(r.selfsim)}};
  j["ratio"] = r.ratio ? to_json(*r.ratio) : json(nullptr);
  return j;
}

inline json diagonal_summary_json(const EscapeReport& escape, const CostProfile& profile,
                                  const BudgetPolicy& policy) {
  json j;
  j["checked"] = escape.checked;
  j["violations"] = escape.violations;
  j["budget_policy"] = to_json(policy);
  j["max_cost_ratio"] = to_json(profile.max_envelope_ratio);
  j["envelope_holds"] = !(Ratio{1, 1} < profile.max_envelope_ratio);
  return j;
}

inline json to_json(const HaltingCurve& curve) {
  json points = json::array();
  for (const HaltingCurve::Point& p : curve.points) {
    points.push_back(
        json{{"budget", p.budget}, {"halted_count", p.halted_count}, {"fraction", p.fraction}});
  }
  return json{{"population", curve.population},
              {"input_policy", std::string(input_policy_name(curve.input_policy))},
              {"points", points}};
}

inline json to_json(const PredictorScore& s) {
  return json{{"predictor_budget", s.predictor_budget},
              {"reference_budget", s.reference_budget},
              {"population", s.population},
              {"disagreements", s.disagreements},
              {"fraction", s.fraction()},
              {"note", "failure fraction relative to the reference budget, not true halting"}};
}

inline std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::BelievesFree: return "believes-free";
    case Outcome::NotAttributed: return "not-attributed";
    case Outcome::Lying: return "lying";
  }
  return "not-attributed";
}

inline json to_json(const TestVerdict& v) {
  json j;
  j["answers"] = json{{"q1", v.answers.q1}, {"q2", v.answers.q2}, {"q3", v.answers.q3},
                      {"q4", v.answers.q4}};
  j["outcome"] = outcome_name(v.outcome);
  j["failed_question"] =
      v.failed ? json("Q" + std::to_string(static_cast<int>(*v.failed))) : json(nullptr);
  if (v.evidence) {
    json e;
    if (v.evidence->q3) {
      const FidelityEvidence& f = *v.evidence->q3;
      e["q3_fidelity"] = json{{"sample_size", f.sample_size},
                              {"decided", f.decided},
                              {"matched", f.matched},
                              {"inconclusive", f.inconclusive}};
    }
    if (v.evidence->q4) {
      const OverheadEvidence& o = *v.evidence->q4;
      json q4{{"challenge", o.challenge},
              {"direct", to_json(o.direct)},
              {"selfsim", to_json(o.selfsim)}};
      q4["ratio"] = o.ratio ? to_json(*o.ratio) : json(nullptr);
      e["q4_overhead"] = q4;
    }
    j["evidence"] = e;
  } else {
    j["evidence"] = json(nullptr);
  }
  return j;
}

inline std::optional<AgentKind> agent_kind_from(std::string_view name) {
  if (name == "thermostat") return AgentKind::Thermostat;
  if (name == "finite-automaton") return AgentKind::FiniteAutomaton;
  if (name == "universal-machine") return AgentKind::UniversalMachine;
  if (name == "custom") return AgentKind::Custom;
  return std::nullopt;
}

inline json to_json(const AgentProfile& p) {
  json j{{"name", p.name},
         {"kind", std::string(agent_kind_name(p.kind))},
         {"is_decider", p.is_decider},
         {"recursive_reasoning", p.recursive_reasoning},
         {"self_model", p.self_model},
         {"claims_self_prediction", p.claims_self_prediction}};
  j["machine"] = p.machine ? json(*p.machine) : json(nullptr);
  return j;
}

// Throws json exceptions on shape errors; unknown kinds fall back to custom.
inline AgentProfile profile_from_json(const json& j) {
  AgentProfile p;
  p.name = j.at("name").get<std::string>();
  if (auto kind = agent_kind_from(j.value("kind", "custom"))) p.kind = *kind;
  p.is_decider = j.at("is_decider").get<bool>();
  p.recursive_reasoning = j.at("recursive_reasoning").get<bool>();
  p.self_model = j.at("self_model").get<bool>();
  p.claims_self_prediction = j.at("claims_self_prediction").get<bool>();
  if (j.contains("machine") && !j["machine"].is_null()) {
    p.machine = j["machine"].get<DeciderIndex>();
  }
  return p;
}

}  // namespace deciderlab
