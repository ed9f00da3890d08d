#pragma once

// Human-writable machine description language (.tmm) with a hand-written
// parser that reports every error in one pass.
//
// Grammar (frozen, see docs/formats.md): line oriented, `#` comments, blank
// lines ignored. Header lines `machine <identifier>` and `states <name>+`
// (first named state is the start state), then one rule per line:
//   <state> <symbol> -> <target> <write> <move>
// with symbol/write in {0, 1, _}, target a declared state or ACCEPT/REJECT,
// move in {L, R}.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deciderlab/vm.hpp"

namespace deciderlab {

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  std::string token;
};

struct MachinefileDocument {
  std::string name;
  std::vector<std::string> state_names;  // declaration order; index = state id
  MachineDescription machine;
};

struct ParseOutcome {
  std::optional<MachinefileDocument> doc;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty() && doc.has_value(); }
};

namespace mf_detail {

struct TokenRef {
  std::string_view text;
  int column = 0;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

inline std::optional<Symbol> parse_symbol(std::string_view s) {
  if (s == "0") return Symbol::Zero;
  if (s == "1") return Symbol::One;
  if (s == "_") return Symbol::Blank;
  return std::nullopt;
}

inline char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    case Symbol::Blank: return '_';
  }
  return '_';
}

inline std::vector<TokenRef> tokenize(std::string_view line) {
  std::vector<TokenRef> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

}  // namespace mf_detail

inline ParseOutcome parse_machinefile(std::string_view text) {
  using mf_detail::TokenRef;

  ParseOutcome out;
  auto fail = [&out](int line, const TokenRef& tok, std::string message) {
    out.errors.push_back({line, tok.column, std::move(message), std::string(tok.text)});
  };
  auto fail_line = [&out](int line, std::string message) {
    out.errors.push_back({line, 1, std::move(message), ""});
  };

  std::string name;
  std::vector<std::string> state_names;
  std::map<std::string, std::uint32_t, std::less<>> state_ids;
  int states_line = 0;
  bool saw_machine = false, saw_states = false;

  struct PendingRule {
    std::uint32_t state;
    Symbol symbol;
    Rule rule;
    int line;
  };
  std::vector<PendingRule> pending;
  std::map<std::pair<std::uint32_t, Symbol>, int> seen;  // -> first line

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::vector<TokenRef> tokens = mf_detail::tokenize(line);
    if (tokens.empty()) continue;
    const TokenRef& head = tokens[0];

    if (head.text == "machine") {
      if (saw_machine) {
        fail(line_no, head, "duplicate machine header");
        continue;
      }
      saw_machine = true;
      if (tokens.size() != 2 || !mf_detail::is_identifier(tokens[1].text)) {
        fail(line_no, tokens.size() > 1 ? tokens[1] : head, "expected: machine <identifier>");
        continue;
      }
      name = std::string(tokens[1].text);
      continue;
    }

    if (head.text == "states") {
      if (saw_states) {
        fail(line_no, head, "duplicate states declaration");
        continue;
      }
      saw_states = true;
      states_line = line_no;
      if (tokens.size() < 2) {
        fail(line_no, head, "expected at least one state name");
        continue;
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view n = tokens[i].text;
        if (n == "ACCEPT" || n == "REJECT") {
          fail(line_no, tokens[i], "reserved name cannot be a state");
          continue;
        }
        if (!mf_detail::is_identifier(n)) {
          fail(line_no, tokens[i], "invalid state name");
          continue;
        }
        if (state_ids.count(n)) {
          fail(line_no, tokens[i], "duplicate state declaration");
          continue;
        }
        state_ids.emplace(std::string(n), static_cast<std::uint32_t>(state_names.size()));
        state_names.emplace_back(n);
      }
      continue;
    }

    // Rule line: <state> <symbol> -> <target> <write> <move>
    if (tokens.size() != 6 || tokens[2].text != "->") {
      fail(line_no, head, "expected: <state> <symbol> -> <target> <write> <move>");
      continue;
    }
    bool bad = false;

    std::uint32_t state_id = 0;
    if (auto it = state_ids.find(tokens[0].text); it != state_ids.end()) {
      state_id = it->second;
    } else {
      fail(line_no, tokens[0],
           "unknown state " + std::string(tokens[0].text));
      bad = true;
    }

    std::optional<Symbol> sym = mf_detail::parse_symbol(tokens[1].text);
    if (!sym) {
      fail(line_no, tokens[1], "bad symbol, expected 0, 1 or _");
      bad = true;
    }

    // A malformed right-hand side still claims its (state, symbol) slot so a
    // broken rule is not also reported as missing.
    if (!bad) {
      auto key = std::make_pair(state_id, *sym);
      if (auto it = seen.find(key); it != seen.end()) {
        fail(line_no, tokens[0],
             "duplicate rule for " + std::string(tokens[0].text) + "/" +
                 mf_detail::symbol_char(*sym) + std::string(", first given on line ") +
                 std::to_string(it->second));
        continue;
      }
      seen.emplace(key, line_no);
    }

    Target target = Target::reject();
    if (tokens[3].text == "ACCEPT") {
      target = Target::accept();
    } else if (tokens[3].text == "REJECT") {
      target = Target::reject();
    } else if (auto it = state_ids.find(tokens[3].text); it != state_ids.end()) {
      target = Target::state(it->second);
    } else {
      fail(line_no, tokens[3],
           "unknown state " + std::string(tokens[3].text));
      bad = true;
    }

    std::optional<Symbol> write = mf_detail::parse_symbol(tokens[4].text);
    if (!write) {
      fail(line_no, tokens[4], "bad write symbol, expected 0, 1 or _");
      bad = true;
    }

    Move move = Move::Right;
    if (tokens[5].text == "L") {
      move = Move::Left;
    } else if (tokens[5].text == "R") {
      move = Move::Right;
    } else {
      fail(line_no, tokens[5], "bad move, expected L or R");
      bad = true;
    }

    if (bad) continue;
    pending.push_back({state_id, *sym, Rule{target, *write, move}, line_no});
  }

  if (!saw_machine) fail_line(1, "missing machine header");
  if (!saw_states) fail_line(1, "missing states declaration");

  // Totality: exactly one rule per (state, symbol).
  if (saw_states) {
    for (std::uint32_t q = 0; q < state_names.size(); ++q) {
      for (std::uint32_t s = 0; s < kSymbolCount; ++s) {
        auto sym = static_cast<Symbol>(s);
        if (!seen.count({q, sym})) {
          out.errors.push_back({states_line, 1,
                                "missing rule " + state_names[q] + "/" +
                                    mf_detail::symbol_char(sym),
                                state_names[q]});
        }
      }
    }
  }

  if (!out.errors.empty()) return out;

  MachinefileDocument doc;
  doc.name = name;
  doc.state_names = state_names;
  doc.machine.state_count = static_cast<std::uint32_t>(state_names.size());
  doc.machine.start_state = 0;
  doc.machine.rules.assign(static_cast<std::size_t>(doc.machine.state_count) * kSymbolCount,
                           Rule{});
  for (const PendingRule& p : pending) {
    doc.machine.rule(p.state, p.symbol) = p.rule;
  }
  out.doc = std::move(doc);
  return out;
}

// Canonical source: states named q0..q{m-1}, rules state-major in symbol
// order 0, 1, _. The grammar makes the first declared state the start state,
// so a machine whose start is not state 0 is emitted start-first (a renamed
// isomorph); machines from the enumeration always start at 0 and round-trip
// exactly.
inline std::string serialize_machine(const MachineDescription& m,
                                     std::string_view name = "m") {
  assert(is_valid(m));
  std::vector<std::uint32_t> order;  // new id -> old id
  order.push_back(m.start_state);
  for (std::uint32_t q = 0; q < m.state_count; ++q) {
    if (q != m.start_state) order.push_back(q);
  }
  std::vector<std::uint32_t> new_id(m.state_count);
  for (std::uint32_t i = 0; i < order.size(); ++i) new_id[order[i]] = i;

  std::string text = "machine ";
  text += name;
  text += "\nstates";
  for (std::uint32_t i = 0; i < m.state_count; ++i) {
    text += " q";
    text += std::to_string(i);
  }
  text += '\n';
  for (std::uint32_t i = 0; i < m.state_count; ++i) {
    for (std::uint32_t s = 0; s < kSymbolCount; ++s) {
      auto sym = static_cast<Symbol>(s);
      const Rule& r = m.rule(order[i], sym);
      text += 'q';
      text += std::to_string(i);
      text += ' ';
      text += mf_detail::symbol_char(sym);
      text += " -> ";
      if (r.next.is_accept()) {
        text += "ACCEPT";
      } else if (r.next.is_reject()) {
        text += "REJECT";
      } else {
        text += 'q';
        text += std::to_string(new_id[r.next.state_id()]);
      }
      text += ' ';
      text += mf_detail::symbol_char(r.write);
      text += ' ';
      text += r.move == Move::Right ? 'R' : 'L';
      text += '\n';
    }
  }
  return text;
}

}  // namespace deciderlab
