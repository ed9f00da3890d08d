#pragma once

// A small zoo of concrete machines used across demos and tests: the canonical
// rejector (also the decode fallback), an immediate acceptor, a provable
// non-halter, and a few machines whose running time depends on the input.

#include <cstdint>

#include "deciderlab/vm.hpp"

namespace deciderlab {

// One state, every transition rejects and echoes the scanned symbol. Decides
// 0 in exactly one step on every input.
inline MachineDescription trivial_rejector() {
  MachineDescription m = uniform_machine(1, Rule{Target::reject(), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero).write = Symbol::Zero;
  m.rule(0, Symbol::One).write = Symbol::One;
  return m;
}

// One state, every transition accepts. Decides 1 in exactly one step.
inline MachineDescription immediate_acceptor() {
  MachineDescription m = uniform_machine(1, Rule{Target::accept(), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero).write = Symbol::Zero;
  m.rule(0, Symbol::One).write = Symbol::One;
  return m;
}

// One state, every transition re-enters it moving right: never halts.
inline MachineDescription self_looper() {
  MachineDescription m = uniform_machine(1, Rule{Target::state(0), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero).write = Symbol::Zero;
  m.rule(0, Symbol::One).write = Symbol::One;
  return m;
}

// Scans right over the input and accepts at the first blank: |input|+1 steps.
inline MachineDescription blank_scanner() {
  MachineDescription m = uniform_machine(1, Rule{Target::state(0), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero).write = Symbol::Zero;
  m.rule(0, Symbol::One).write = Symbol::One;
  m.rule(0, Symbol::Blank) = Rule{Target::accept(), Symbol::Blank, Move::Right};
  return m;
}

// Two states tracking parity of ones seen so far; accepts at the blank end
// iff the count is odd. Halts in |input|+1 steps.
inline MachineDescription parity_checker() {
  MachineDescription m = uniform_machine(2, Rule{Target::reject(), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero) = Rule{Target::state(0), Symbol::Zero, Move::Right};
  m.rule(0, Symbol::One) = Rule{Target::state(1), Symbol::One, Move::Right};
  m.rule(0, Symbol::Blank) = Rule{Target::reject(), Symbol::Blank, Move::Right};
  m.rule(1, Symbol::Zero) = Rule{Target::state(1), Symbol::Zero, Move::Right};
  m.rule(1, Symbol::One) = Rule{Target::state(0), Symbol::One, Move::Right};
  m.rule(1, Symbol::Blank) = Rule{Target::accept(), Symbol::Blank, Move::Right};
  return m;
}

// The two-state furnace controller: state 0 inspects the leading input bit
// (1 = too cold), state 1 confirms and switches the furnace on (accept).
// Anything else leaves it off (reject).
inline MachineDescription thermostat_automaton() {
  MachineDescription m = uniform_machine(2, Rule{Target::reject(), Symbol::Blank, Move::Right});
  m.rule(0, Symbol::Zero) = Rule{Target::reject(), Symbol::Zero, Move::Right};
  m.rule(0, Symbol::One) = Rule{Target::state(1), Symbol::One, Move::Right};
  m.rule(0, Symbol::Blank) = Rule{Target::reject(), Symbol::Blank, Move::Right};
  m.rule(1, Symbol::Zero) = Rule{Target::accept(), Symbol::Zero, Move::Right};
  m.rule(1, Symbol::One) = Rule{Target::accept(), Symbol::One, Move::Right};
  m.rule(1, Symbol::Blank) = Rule{Target::accept(), Symbol::Blank, Move::Right};
  return m;
}

// Walks right through `delay` states before accepting: halts with value 1
// after exactly `delay` steps on empty input. Useful for placing a Yes
// answer at a chosen depth.
inline MachineDescription delayed_acceptor(std::uint32_t delay) {
  assert(delay >= 1);
  MachineDescription m = uniform_machine(delay, Rule{Target::reject(), Symbol::Blank, Move::Right});
  for (std::uint32_t q = 0; q < delay; ++q) {
    Target next = (q + 1 < delay) ? Target::state(q + 1) : Target::accept();
    m.rule(q, Symbol::Zero) = Rule{next, Symbol::Zero, Move::Right};
    m.rule(q, Symbol::One) = Rule{next, Symbol::One, Move::Right};
    m.rule(q, Symbol::Blank) = Rule{next, Symbol::Blank, Move::Right};
  }
  return m;
}

}  // namespace deciderlab
