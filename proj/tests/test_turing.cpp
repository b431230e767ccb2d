#include <doctest.h>

#include "cgw/catalog.hpp"
#include "cgw/turing.hpp"

using namespace cgw;

namespace {

  std::vector<std::string> successors(TuringMachine const& tm, char const* config) {
    std::vector<std::string> out;
    for (auto const& s : tm_step(tm, parse_configuration(tm, config))) {
      out.push_back(tm.transitions[s.transition].name + ": "
                    + format_configuration(tm, s.next));
    }
    return out;
  }

  // A = {a, b}, Q = {p, f}: "p b -> a f" reads one square to the right.
  TuringMachine right_reader() {
    TuringMachine tm;
    auto a = tm.alphabet.add("a"), b = tm.alphabet.add("b");
    tm.tape_letters = {a, b};
    auto p = tm.alphabet.add("p"), f = tm.alphabet.add("f");
    tm.states = {p, f};
    tm.transitions.push_back({"t", {}, p, parse_word("b", tm.alphabet), parse_word("a", tm.alphabet), f, {}});
    tm.accept = parse_configuration(tm, "a f");
    validate_machine(tm);
    return tm;
  }

}  // namespace

TEST_CASE("tm_step on the counterexample machine") {
  auto tm = counterexample_tm();
  CHECK(successors(tm, "a q") == std::vector<std::string>{"r_1: q_0"});
  CHECK(successors(tm, "q").empty());
  CHECK(successors(tm, "a a q_0") == std::vector<std::string>{"r_2: a q_0"});
}

TEST_CASE("tm_step extends the right end of the tape") {
  auto tm = right_reader();
  CHECK(successors(tm, "p b b") == std::vector<std::string>{"t: a f b"});
  CHECK(successors(tm, "p") == std::vector<std::string>{"t: a f"});
  CHECK(successors(tm, "p a").empty());
}

TEST_CASE("tm_accepts") {
  auto tm  = counterexample_tm();
  auto res = tm_accepts(tm, parse_configuration(tm, "a a q"), {});
  REQUIRE(res.outcome == SearchOutcome::accepted);
  REQUIRE(res.trace->transitions.size() == 2);
  CHECK(format_configuration(tm, res.trace->configurations[1]) == "a q_0");

  CHECK(tm_accepts(tm, parse_configuration(tm, "q"), {}).outcome
        == SearchOutcome::rejected_exhaustive);
  auto zero = tm_accepts(tm, parse_configuration(tm, "q_0"), {});
  CHECK(zero.outcome == SearchOutcome::accepted);
  CHECK(zero.trace->transitions.empty());
  CHECK(tm_accepts(tm, parse_configuration(tm, "a a a q"), SearchBudget{1, 100}).outcome
        == SearchOutcome::unknown_budget);
}

TEST_CASE("naive_to_smachine") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);
  REQUIRE(s.rules.size() == 2);
  CHECK(format_word(s.rules[0].parts[0].lhs, s.alphabet) == "q");
  CHECK(format_word(s.rules[0].parts[0].rhs, s.alphabet) == "a^-1 q_0");
  CHECK(format_word(s.rules[1].parts[0].lhs, s.alphabet) == "q_0");
  CHECK(format_word(s.rules[1].parts[0].rhs, s.alphabet) == "a^-1 q_0");
  CHECK(validate_machine(s).empty());
  CHECK(format_admissible(s, s.accept) == "▷ q_0 ◁");
}

TEST_CASE("the naive S-machine accepts every configuration M accepts, and q") {
  auto        tm = counterexample_tm();
  auto        s  = naive_to_smachine(tm);
  std::size_t compared = 0, tm_accepted = 0;
  for (char const* state : {"q", "q_0"}) {
    for (std::size_t left = 0; left <= 4; ++left) {
      for (std::size_t right = 0; left + right <= 4; ++right) {
        Configuration c;
        c.state = tm.alphabet.index(state);
        c.left  = power(Word{tm.alphabet.letter("a")}, static_cast<long>(left));
        c.right = power(Word{tm.alphabet.letter("a")}, static_cast<long>(right));
        auto m  = tm_accepts(tm, c, {});
        REQUIRE(m.outcome != SearchOutcome::unknown_budget);
        auto sm = accepts(s, configuration_to_admissible(s, tm, c), {});
        if (m.outcome == SearchOutcome::accepted) {
          ++tm_accepted;
          CHECK(sm.outcome == SearchOutcome::accepted);
        }
        ++compared;
      }
    }
  }
  CHECK(compared == 30);
  CHECK(tm_accepted > 0);
  auto q = parse_configuration(tm, "q");
  CHECK(tm_accepts(tm, q, {}).outcome == SearchOutcome::rejected_exhaustive);
  CHECK(accepts(s, configuration_to_admissible(s, tm, q), {}).outcome
        == SearchOutcome::accepted);
}

TEST_CASE("configurations") {
  auto tm = counterexample_tm();
  auto c  = parse_configuration(tm, "a a q a");
  CHECK(c.left.size() == 2);
  CHECK(c.right.size() == 1);
  CHECK(format_configuration(tm, c) == "a a q a");
  CHECK_THROWS_AS(parse_configuration(tm, "a a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_configuration(tm, "q q_0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_configuration(tm, "a^-1 q"), std::invalid_argument);
}

TEST_CASE("validate_machine rejects bad machines") {
  auto tm = counterexample_tm();
  tm.accept.left = Word{tm.alphabet.letter("a", true)};
  CHECK_THROWS_AS(validate_machine(tm), std::invalid_argument);
  tm = counterexample_tm();
  tm.transitions[0].name = "a";
  CHECK_THROWS_AS(validate_machine(tm), std::invalid_argument);
}
