#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "deciderlab/machinefile.hpp"
#include "deciderlab/machines.hpp"
#include "deciderlab/rng.hpp"
#include "helpers.hpp"

using namespace deciderlab;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::filesystem::path kSourceDir{DECIDERLAB_SOURCE_DIR};

}  // namespace

TEST_CASE("parsing the smallest program") {
  ParseOutcome out = parse_machinefile(
      "machine accept\n"
      "states q0\n"
      "q0 0 -> ACCEPT 0 R\n"
      "q0 1 -> ACCEPT 1 R\n"
      "q0 _ -> ACCEPT _ R\n");
  REQUIRE(out.ok());
  CHECK(out.doc->name == "accept");
  CHECK(out.doc->machine == immediate_acceptor());
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
  ParseOutcome out = parse_machinefile(
      "# furnace logic\r\n"
      "machine t # trailing comment\r\n"
      "\r\n"
      "states idle cold\r\n"
      "idle 0 -> REJECT 0 R\r\n"
      "idle 1 -> cold 1 R\r\n"
      "idle _ -> REJECT _ R\r\n"
      "cold 0 -> ACCEPT 0 R\r\n"
      "cold 1 -> ACCEPT 1 R\r\n"
      "cold _ -> ACCEPT _ R\r\n");
  REQUIRE(out.ok());
  CHECK(out.doc->machine == thermostat_automaton());
  CHECK(out.doc->state_names == std::vector<std::string>{"idle", "cold"});
}

TEST_CASE("missing rules are reported against the states line") {
  ParseOutcome out = parse_machinefile(
      "machine partial\n"
      "states q0\n"
      "q0 0 -> ACCEPT 0 R\n"
      "q0 _ -> REJECT _ R\n");
  REQUIRE_FALSE(out.ok());
  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].message == "missing rule q0/1");
  CHECK(out.errors[0].line == 2);
}

TEST_CASE("unknown target state") {
  ParseOutcome out = parse_machinefile(
      "machine bad\n"
      "states q0\n"
      "q0 0 -> qX 1 R\n"
      "q0 1 -> REJECT 1 R\n"
      "q0 _ -> REJECT _ R\n");
  REQUIRE_FALSE(out.ok());
  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].message == "unknown state qX");
  CHECK(out.errors[0].line == 3);
  CHECK(out.errors[0].token == "qX");
}

TEST_CASE("all errors are collected in one pass") {
  ParseOutcome out = parse_machinefile(
      "machine broken\n"
      "states q0 q0\n"        // duplicate declaration
      "q0 2 -> ACCEPT 0 R\n"  // bad symbol
      "q0 0 -> ACCEPT 0 X\n"  // bad move; still claims the q0/0 slot
      "q0 0 -> ACCEPT 0 R\n"  // duplicate rule for q0/0
      "q0 1 -> REJECT 1 R\n"
      "q0 _ -> REJECT _ R\n");
  REQUIRE_FALSE(out.ok());
  REQUIRE(out.errors.size() == 4);
  CHECK(out.errors[0].line == 2);
  CHECK(out.errors[0].message == "duplicate state declaration");
  CHECK(out.errors[1].line == 3);
  CHECK(out.errors[1].message == "bad symbol, expected 0, 1 or _");
  CHECK(out.errors[2].line == 4);
  CHECK(out.errors[2].message == "bad move, expected L or R");
  CHECK(out.errors[3].line == 5);
  CHECK(out.errors[3].message == "duplicate rule for q0/0, first given on line 4");
}

TEST_CASE("reserved names cannot be states") {
  ParseOutcome out = parse_machinefile(
      "machine bad\n"
      "states ACCEPT\n"
      "ACCEPT 0 -> ACCEPT 0 R\n");
  REQUIRE_FALSE(out.ok());
  CHECK(out.errors[0].message == "reserved name cannot be a state");
}

TEST_CASE("serialization is canonical and parses back") {
  SECTION("trivial rejector") {
    std::string text = serialize_machine(trivial_rejector(), "reject");
    ParseOutcome out = parse_machinefile(text);
    REQUIRE(out.ok());
    CHECK(out.doc->machine == trivial_rejector());
    CHECK(text ==
          "machine reject\n"
          "states q0\n"
          "q0 0 -> REJECT 0 R\n"
          "q0 1 -> REJECT 1 R\n"
          "q0 _ -> REJECT _ R\n");
  }

  SECTION("immediate acceptor") {
    ParseOutcome out = parse_machinefile(serialize_machine(immediate_acceptor()));
    REQUIRE(out.ok());
    CHECK(out.doc->machine == immediate_acceptor());
  }

  SECTION("generated machines, ten thousand cases") {
    SplitMix64 rng(0x3E71A115u);
    for (int trial = 0; trial < 10000; ++trial) {
      MachineDescription m = deciderlab::testing::random_machine(rng, 6);
      ParseOutcome out = parse_machinefile(serialize_machine(m));
      REQUIRE(out.ok());
      REQUIRE(out.doc->machine == m);
    }
  }

  SECTION("a machine whose start state is not 0 comes back start-first") {
    MachineDescription m = uniform_machine(2, Rule{Target::reject(), Symbol::Blank, Move::Right});
    m.start_state = 1;
    m.rule(1, Symbol::Blank) = Rule{Target::state(0), Symbol::One, Move::Left};
    ParseOutcome out = parse_machinefile(serialize_machine(m));
    REQUIRE(out.ok());
    const MachineDescription& back = out.doc->machine;
    CHECK(back.start_state == 0);
    CHECK(back.state_count == 2);
    // old state 1 is the new state 0; its blank rule now points at new id 1
    CHECK(back.rule(0, Symbol::Blank) == Rule{Target::state(1), Symbol::One, Move::Left});
  }
}

TEST_CASE("the machines directory parses and matches the built-ins") {
  struct Pin {
    const char* file;
    MachineDescription machine;
  };
  const Pin pins[] = {
      {"accept.tmm", immediate_acceptor()},
      {"reject.tmm", trivial_rejector()},
      {"loop.tmm", self_looper()},
      {"scanner.tmm", blank_scanner()},
      {"parity.tmm", parity_checker()},
      {"thermostat.tmm", thermostat_automaton()},
  };
  for (const Pin& pin : pins) {
    ParseOutcome out = parse_machinefile(read_file(kSourceDir / "machines" / pin.file));
    INFO(pin.file);
    REQUIRE(out.ok());
    CHECK(out.doc->machine == pin.machine);
  }
}

TEST_CASE("every invalid fixture fails with located errors") {
  std::filesystem::path dir = kSourceDir / "tests" / "fixtures" / "invalid";
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".tmm") continue;
    ++count;
    ParseOutcome out = parse_machinefile(read_file(entry.path()));
    INFO(entry.path().filename().string());
    REQUIRE_FALSE(out.ok());
    REQUIRE_FALSE(out.errors.empty());
    for (const ParseError& e : out.errors) {
      REQUIRE(e.line >= 1);
      REQUIRE(e.column >= 1);
      REQUIRE_FALSE(e.message.empty());
    }
  }
  CHECK(count >= 5);
}
