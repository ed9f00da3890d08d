#pragma once

// Deterministic single-tape Turing machine execution with exact step
// accounting. Machines decide: they halt through one of two distinguished
// actions, accept (1) or reject (0), or they keep running.

#include <cassert>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace deciderlab {

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Blank = 2 };
enum class Move : std::uint8_t { Left = 0, Right = 1 };

inline constexpr std::uint32_t kSymbolCount = 3;

// Transition target: a live state id or one of the two halting actions.
class Target {
 public:
  constexpr Target() : code_(kReject) {}

  static constexpr Target state(std::uint32_t id) { return Target(id); }
  static constexpr Target accept() { return Target(kAccept); }
  static constexpr Target reject() { return Target(kReject); }

  constexpr bool is_accept() const { return code_ == kAccept; }
  constexpr bool is_reject() const { return code_ == kReject; }
  constexpr bool is_halt() const { return is_accept() || is_reject(); }
  constexpr bool is_state() const { return !is_halt(); }
  constexpr std::uint32_t state_id() const {
    assert(is_state());
    return code_;
  }

  friend constexpr bool operator==(Target a, Target b) = default;

 private:
  explicit constexpr Target(std::uint32_t code) : code_(code) {}

  static constexpr std::uint32_t kAccept = 0xFFFFFFFEu;
  static constexpr std::uint32_t kReject = 0xFFFFFFFFu;

  std::uint32_t code_;
};

struct Rule {
  Target next = Target::reject();
  Symbol write = Symbol::Blank;
  Move move = Move::Right;

  friend constexpr bool operator==(const Rule&, const Rule&) = default;
};

// Total transition table over {0, 1, blank}. Rows are stored state-major in
// symbol order zero, one, blank; the table always holds state_count * 3 rows.
struct MachineDescription {
  std::uint32_t state_count = 1;
  std::uint32_t start_state = 0;
  std::vector<Rule> rules;

  const Rule& rule(std::uint32_t state, Symbol sym) const {
    return rules[state * kSymbolCount + static_cast<std::uint32_t>(sym)];
  }
  Rule& rule(std::uint32_t state, Symbol sym) {
    return rules[state * kSymbolCount + static_cast<std::uint32_t>(sym)];
  }

  friend bool operator==(const MachineDescription&, const MachineDescription&) = default;
};

inline bool is_valid(const MachineDescription& m) {
  if (m.state_count < 1) return false;
  if (m.start_state >= m.state_count) return false;
  if (m.rules.size() != static_cast<std::size_t>(m.state_count) * kSymbolCount) return false;
  for (const Rule& r : m.rules) {
    if (r.next.is_state() && r.next.state_id() >= m.state_count) return false;
    if (static_cast<std::uint8_t>(r.write) > 2) return false;
  }
  return true;
}

// Builds an m-state table with every row set to `fill`; callers then adjust
// individual rows. Handy for the many tiny machines in tests and demos.
inline MachineDescription uniform_machine(std::uint32_t state_count, const Rule& fill) {
  MachineDescription m;
  m.state_count = state_count;
  m.start_state = 0;
  m.rules.assign(static_cast<std::size_t>(state_count) * kSymbolCount, fill);
  return m;
}

// Unbounded two-way tape plus head and control state. Logically the tape is a
// sparse map from cell index to symbol where unset cells read blank; storage
// grows on demand in both directions.
class TapeConfiguration {
 public:
  TapeConfiguration(const MachineDescription& m, std::string_view input)
      : head_(0), state_(m.start_state) {
    right_.reserve(input.size());
    for (char c : input) {
      assert(c == '0' || c == '1');
      right_.push_back(c == '1' ? Symbol::One : Symbol::Zero);
    }
  }

  std::int64_t head() const { return head_; }
  std::uint32_t state() const { return state_; }
  void set_state(std::uint32_t s) { state_ = s; }

  Symbol symbol_at(std::int64_t cell) const {
    if (cell >= 0) {
      auto i = static_cast<std::uint64_t>(cell);
      return i < right_.size() ? right_[i] : Symbol::Blank;
    }
    auto i = static_cast<std::uint64_t>(-cell - 1);
    return i < left_.size() ? left_[i] : Symbol::Blank;
  }

  Symbol read() const { return symbol_at(head_); }

  void write(Symbol s) {
    if (head_ >= 0) {
      auto i = static_cast<std::uint64_t>(head_);
      if (i >= right_.size()) right_.resize(i + 1, Symbol::Blank);
      right_[i] = s;
    } else {
      auto i = static_cast<std::uint64_t>(-head_ - 1);
      if (i >= left_.size()) left_.resize(i + 1, Symbol::Blank);
      left_[i] = s;
    }
  }

  void move(Move m) { head_ += (m == Move::Right) ? 1 : -1; }

  // Smallest and largest non-blank cell, or nullopt for an all-blank tape.
  std::optional<std::pair<std::int64_t, std::int64_t>> non_blank_extent() const {
    std::optional<std::int64_t> lo, hi;
    for (std::size_t i = 0; i < left_.size(); ++i) {
      if (left_[i] != Symbol::Blank) {
        std::int64_t cell = -static_cast<std::int64_t>(i) - 1;
        if (!lo || cell < *lo) lo = cell;
        if (!hi || cell > *hi) hi = cell;
      }
    }
    for (std::size_t i = 0; i < right_.size(); ++i) {
      if (right_[i] != Symbol::Blank) {
        auto cell = static_cast<std::int64_t>(i);
        if (!lo || cell < *lo) lo = cell;
        if (!hi || cell > *hi) hi = cell;
      }
    }
    if (!lo) return std::nullopt;
    return std::make_pair(*lo, *hi);
  }

 private:
  std::vector<Symbol> right_;  // cells 0, 1, 2, ...
  std::vector<Symbol> left_;   // cells -1, -2, -3, ...
  std::int64_t head_;
  std::uint32_t state_;
};

inline TapeConfiguration initial_configuration(const MachineDescription& m,
                                               std::string_view input) {
  return TapeConfiguration(m, input);
}

// Applies exactly one transition: write, move, enter the next state. Returns
// the decision value if the transition halts, nullopt otherwise.
inline std::optional<int> step(const MachineDescription& m, TapeConfiguration& config) {
  assert(config.state() < m.state_count);
  const Rule& r = m.rule(config.state(), config.read());
  config.write(r.write);
  config.move(r.move);
  if (r.next.is_accept()) return 1;
  if (r.next.is_reject()) return 0;
  config.set_state(r.next.state_id());
  return std::nullopt;
}

enum class Verdict : std::uint8_t { No = 0, Yes = 1, StillRunning = 2 };

struct RunOutcome {
  Verdict verdict = Verdict::StillRunning;
  std::uint64_t steps = 0;

  bool decided() const { return verdict != Verdict::StillRunning; }
  int value() const {
    assert(decided());
    return verdict == Verdict::Yes ? 1 : 0;
  }

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Runs at most `budget` transitions. Decided outcomes carry the exact step
// count of the halting transition; otherwise steps equals the budget.
inline RunOutcome run(const MachineDescription& m, std::string_view input,
                      std::uint64_t budget) {
  assert(budget >= 1);
  TapeConfiguration config(m, input);
  for (std::uint64_t s = 1; s <= budget; ++s) {
    if (std::optional<int> v = step(m, config)) {
      return {*v == 1 ? Verdict::Yes : Verdict::No, s};
    }
  }
  return {Verdict::StillRunning, budget};
}

}  // namespace deciderlab
