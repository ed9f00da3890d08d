#pragma once

// Shared test utilities: seeded machine generators and the tiny hand-built
// machines the worked examples trace through.

#include <string>
#include <vector>

#include "deciderlab/enumeration.hpp"
#include "deciderlab/machines.hpp"
#include "deciderlab/rng.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab::testing {

inline Rule random_rule(SplitMix64& rng, std::uint32_t state_count) {
  std::uint64_t target_code = rng.below(state_count + 2);
  Target target;
  if (target_code == state_count) {
    target = Target::accept();
  } else if (target_code == state_count + 1) {
    target = Target::reject();
  } else {
    target = Target::state(static_cast<std::uint32_t>(target_code));
  }
  auto write = static_cast<Symbol>(rng.below(3));
  Move move = rng.below(2) ? Move::Right : Move::Left;
  return Rule{target, write, move};
}

inline MachineDescription random_machine(SplitMix64& rng, std::uint32_t max_states) {
  auto states = static_cast<std::uint32_t>(1 + rng.below(max_states));
  MachineDescription m = uniform_machine(states, Rule{});
  for (Rule& r : m.rules) r = random_rule(rng, states);
  return m;
}

// Two states, accepts the empty input in exactly two steps:
// step 1 writes a one and moves into the second state, step 2 accepts.
inline MachineDescription two_step_acceptor() {
  MachineDescription m = uniform_machine(2, Rule{Target::reject(), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Blank) = Rule{Target::state(1), Symbol::One, Move::Right};
  m.rule(1, Symbol::Blank) = Rule{Target::accept(), Symbol::One, Move::Right};
  return m;
}

// The first `count` binary strings ordered by length then lexicographically;
// independent route used to pin down the shortlex bijection.
inline std::vector<std::string> shortlex_first(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t len = 0; out.size() < count; ++len) {
    std::uint64_t total = std::uint64_t{1} << len;
    for (std::uint64_t v = 0; v < total && out.size() < count; ++v) {
      std::string s(len, '0');
      for (std::size_t i = 0; i < len; ++i) {
        if ((v >> (len - 1 - i)) & 1u) s[i] = '1';
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace deciderlab::testing
