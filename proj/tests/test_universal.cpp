#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "deciderlab/enumeration.hpp"
#include "deciderlab/machines.hpp"
#include "deciderlab/rng.hpp"
#include "deciderlab/universal.hpp"
#include "helpers.hpp"

using namespace deciderlab;

// Cost-model arithmetic used below (all 1-state machines encode to 16 bits):
// decode charge 16, then 1 + row_scan per step with row_scan = 1/2/3 for the
// zero/one/blank rows.

TEST_CASE("straight mode is a transparent direct run") {
  UniversalDecider u = UniversalDecider::for_machine(immediate_acceptor());
  CostedDecision d = u.decide(0, "", 100);
  CHECK(d.verdict == Verdict::Yes);
  CHECK(d.simulated_steps == 1);
  CHECK(d.host_steps == 1);
}

TEST_CASE("simulation mode charges decode plus row scans") {
  UniversalDecider u = UniversalDecider::for_machine(immediate_acceptor());

  SECTION("acceptor on empty input: blank row costs 1+3 after 16 decode bits") {
    DeciderIndex acceptor = canonical_index(immediate_acceptor()).value();
    CostedDecision d = u.decide(acceptor, "", 100);
    CHECK(d.verdict == Verdict::Yes);
    CHECK(d.simulated_steps == 1);
    CHECK(d.host_steps == 20);
    CHECK(d.host_steps >= 2);
  }

  SECTION("non-halter exhausts any budget") {
    DeciderIndex looper = canonical_index(self_looper()).value();
    CostedDecision d = u.decide(looper, "", 50);
    CHECK(d.verdict == Verdict::StillRunning);
    CHECK(d.simulated_steps == 50);
  }
}

TEST_CASE("time-limited decisions always land on 0 or 1") {
  UniversalDecider u = UniversalDecider::for_machine(immediate_acceptor());

  SECTION("non-halter collapses to No") {
    DeciderIndex looper = canonical_index(self_looper()).value();
    CostedDecision detail;
    CHECK(u.decide_time_limited(looper, "101", &detail) == 0);
    CHECK(detail.verdict == Verdict::StillRunning);
  }

  SECTION("straight mode accepts under any valid budget") {
    CHECK(u.decide_time_limited(0, "") == 1);
  }

  SECTION("genuine No and timeout No coincide at 0") {
    DeciderIndex rejector = canonical_index(trivial_rejector()).value();
    CHECK(u.decide_time_limited(rejector, "1101") == 0);
  }

  SECTION("totality over an exhaustive pair grid") {
    for (DeciderIndex d = 0; d < 32; ++d) {
      for (DeciderIndex k = 0; k < 32; ++k) {
        int v = u.decide_time_limited(d, index_to_bits(k));
        REQUIRE((v == 0 || v == 1));
      }
    }
  }
}

TEST_CASE("self-simulation goes through the costed interpreter") {
  SECTION("acceptor: host 20 vs one direct step") {
    UniversalDecider u = UniversalDecider::for_machine(immediate_acceptor());
    CostedDecision d = u.self_simulate("", 100);
    CHECK(d.verdict == Verdict::Yes);
    CHECK(d.simulated_steps == 1);
    CHECK(d.host_steps == 20);
  }

  SECTION("rejector on '1': one-row scan lands on the one row") {
    UniversalDecider u = UniversalDecider::for_machine(trivial_rejector());
    CostedDecision d = u.self_simulate("1", 100);
    CHECK(d.verdict == Verdict::No);
    CHECK(d.simulated_steps == 1);
    CHECK(d.host_steps == 19);  // 16 decode + 1 + scan 2
    CHECK(d.host_steps >= 1 + 16);
  }

  SECTION("non-halter still runs") {
    UniversalDecider u = UniversalDecider::for_machine(self_looper());
    CHECK(u.self_simulate("", 100).verdict == Verdict::StillRunning);
  }
}

TEST_CASE("overhead report compares being yourself with simulating yourself") {
  SECTION("acceptor ratio 20") {
    UniversalDecider u = UniversalDecider::for_machine(immediate_acceptor());
    OverheadReport r = u.overhead_report("", 100);
    REQUIRE(r.ratio.has_value());
    CHECK(r.ratio->num == 20);
    CHECK(r.ratio->den == 1);
    CHECK(Ratio{2, 1} < *r.ratio);
  }

  SECTION("rejector ratio at least 2") {
    UniversalDecider u = UniversalDecider::for_machine(trivial_rejector());
    OverheadReport r = u.overhead_report("", 100);
    REQUIRE(r.ratio.has_value());
    CHECK_FALSE(*r.ratio < Ratio{2, 1});
  }

  SECTION("non-halter: undefined ratio") {
    UniversalDecider u = UniversalDecider::for_machine(self_looper());
    OverheadReport r = u.overhead_report("", 100);
    CHECK_FALSE(r.ratio.has_value());
    CHECK(r.direct.verdict == Verdict::StillRunning);
    CHECK(r.selfsim.verdict == Verdict::StillRunning);
  }
}

TEST_CASE("fidelity: simulation matches the direct run wherever it decides") {
  UniversalDecider interpreter(0);  // straight mode never taken below
  SplitMix64 rng(0xF1DE11u);
  int decided = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    // Mix fallback-range indices with the 16-bit band where real machines
    // live; never 0, to stay in simulation mode.
    DeciderIndex d = rng.below(2) ? 65535 + rng.below(65536) : 1 + rng.below(10000);
    std::string k = rng.bit_string(rng.below(7));
    std::uint64_t budget = 200;
    RunOutcome direct = run(machine_for_index(d), k, budget);
    CostedDecision sim = interpreter.decide(d, k, budget);
    if (direct.decided()) {
      ++decided;
      REQUIRE(sim.decided());
      REQUIRE(sim.value() == direct.value());
      REQUIRE(sim.simulated_steps == direct.steps);
    } else {
      REQUIRE(sim.verdict == Verdict::StillRunning);
    }
  }
  CHECK(decided > 2000);  // the sample genuinely exercises decided runs
}

TEST_CASE("overhead lower bound holds for every deciding simulation") {
  UniversalDecider interpreter(0);
  SplitMix64 rng(0x0BEAD5u);
  for (int trial = 0; trial < 2000; ++trial) {
    DeciderIndex d = 1 + rng.below(std::uint64_t{1} << 17);
    std::string k = rng.bit_string(rng.below(7));
    CostedDecision sim = interpreter.decide(d, k, 300);
    std::uint64_t decode_cost = bit_length(d);
    REQUIRE(sim.host_steps >= sim.simulated_steps + decode_cost);
    if (sim.decided()) {
      REQUIRE(sim.host_steps > sim.simulated_steps);
    }
  }
}

TEST_CASE("straight mode transparency across random machines") {
  SplitMix64 rng(0x57A1647u);
  for (int trial = 0; trial < 200; ++trial) {
    MachineDescription m = deciderlab::testing::random_machine(rng, 3);
    std::optional<DeciderIndex> index = canonical_index(m);
    REQUIRE(index.has_value());
    UniversalDecider u(*index);
    std::string k = rng.bit_string(rng.below(7));
    CostedDecision d = u.decide(0, k, 100);
    REQUIRE(d.host_steps == d.simulated_steps);
  }
}
