#include <doctest.h>

#include <deque>
#include <set>

#include "cgw/catalog.hpp"
#include "cgw/smachine.hpp"
#include "cgw/turing.hpp"

using namespace cgw;

namespace {

  // Classes {q_1}, ..., {q_n}; every tape over {a, b}.
  SMachine chain(std::size_t n) {
    SMachine m;
    for (std::size_t i = 1; i <= n; ++i) {
      m.state_classes.push_back({m.alphabet.add("q_" + std::to_string(i))});
      m.accept.states.push_back(m.state_classes.back()[0]);
    }
    auto a = m.alphabet.add("a"), b = m.alphabet.add("b");
    for (std::size_t i = 1; i < n; ++i) {
      m.tape_alphabets.push_back({a, b});
      m.accept.tapes.emplace_back();
    }
    return m;
  }

  SRule make_rule(SMachine const& m, std::string name,
                  std::vector<std::pair<char const*, char const*>> parts) {
    SRule r{std::move(name), {}};
    for (auto [u, v] : parts) {
      r.parts.push_back({parse_word(u, m.alphabet), parse_word(v, m.alphabet)});
    }
    return r;
  }

  std::string run(SMachine const& m, char const* rule_lhs, char const* rule_rhs,
                  char const* word) {
    auto r = apply_rule(m, parse_admissible(m, word), make_rule(m, "r", {{rule_lhs, rule_rhs}}));
    return r ? format_admissible(m, *r) : "inapplicable";
  }

}  // namespace

TEST_CASE("validate_machine") {
  auto m = chain(2);
  m.rules.push_back(make_rule(m, "r", {{"q_2", "q_2"}}));
  CHECK(validate_machine(m).empty());

  auto m3 = chain(3);
  m3.rules.push_back(make_rule(m3, "r", {{"q_1 q_2", "q_1 q_2"}, {"q_2 q_3", "q_2 q_3"}}));
  auto v = validate_machine(m3);
  REQUIRE(v.size() == 1);
  CHECK(v[0].clause == "r(1) >= l(2)");

  auto m4 = chain(2);
  m4.rules.push_back(make_rule(m4, "r", {{"q_1", "a q_1"}}));
  v = validate_machine(m4);
  REQUIRE(!v.empty());
  CHECK(v[0].clause == "V_1 must start with a Q_1-letter");
  CHECK(describe(v[0], m4) == "rule r part 1: V_1 must start with a Q_1-letter");

  auto m5 = chain(2);
  m5.rules.push_back(make_rule(m5, "r", {{"q_2", "q_1 q_2"}}));
  CHECK(!validate_machine(m5).empty());
  m5.rules[0] = make_rule(m5, "q_1", {{"q_2", "q_2"}});
  CHECK(!validate_machine(m5).empty());
}

TEST_CASE("invert_rule") {
  auto m = chain(3);
  auto r = make_rule(m, "r", {{"q_2", "a q_2 b"}});
  CHECK(invert_rule(m, r) == make_rule(m, "r", {{"a q_2 b", "q_2"}}));
  CHECK(invert_rule(m, invert_rule(m, r)) == r);
  auto multi = make_rule(m, "s", {{"q_1 a q_2", "q_1 q_2 b"}, {"q_3", "q_3"}});
  CHECK(invert_rule(m, invert_rule(m, multi)) == multi);

  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);
  auto r2 = s.rules[1];
  CHECK(format_word(r2.parts[0].rhs, s.alphabet) == "a^-1 q_0");
  auto inv = invert_rule(s, r2);
  CHECK(format_word(inv.parts[0].lhs, s.alphabet) == "a^-1 q_0");
  CHECK(format_word(inv.parts[0].rhs, s.alphabet) == "q_0");
}

TEST_CASE("apply_rule") {
  auto m = chain(2);
  CHECK(run(m, "q_2", "a q_2", "q_1 q_2") == "q_1 a q_2");
  CHECK(run(m, "q_2", "a q_2", "q_1 a^-1 q_2") == "q_1 q_2");
  CHECK(run(m, "q_1 b q_2", "q_1 q_2", "q_1 a q_2") == "inapplicable");
  CHECK(run(m, "q_1 b q_2", "q_1 q_2", "q_1 b q_2") == "q_1 q_2");
  CHECK(run(m, "q_1", "q_1 b", "q_1 a q_2") == "q_1 b a q_2");
  // Outer tape letters are cancelled against the tape, not matched.
  CHECK(run(m, "a q_2", "q_2", "q_1 q_2") == "q_1 a^-1 q_2");
  CHECK(run(m, "a q_2", "q_2", "q_1 b a q_2") == "q_1 b q_2");
  // State letters must match.
  auto m3 = chain(3);
  CHECK(run(m3, "q_1", "q_1 a", "q_1 b q_2 q_3") == "q_1 a b q_2 q_3");
}

TEST_CASE("an application is undone by the inverse rule") {
  auto m = chain(3);
  auto r = make_rule(m, "r", {{"q_1", "q_1 a"}, {"b q_2 a q_3", "q_2 b q_3"}});
  for (char const* word :
       {"q_1 q_2 a q_3", "q_1 a^-1 b q_2 a q_3", "q_1 b q_2 a q_3", "q_1 a^-1 q_2 a q_3"}) {
    auto w  = parse_admissible(m, word);
    auto w1 = apply_rule(m, w, r);
    REQUIRE(w1);
    auto w2 = apply_rule(m, *w1, invert_rule(m, r));
    REQUIRE(w2);
    CHECK(*w2 == w);
  }
  CHECK_FALSE(apply_rule(m, parse_admissible(m, "q_1 q_2 b q_3"), r));
}

TEST_CASE("symmetric_closure") {
  auto m = chain(2);
  m.rules.push_back(make_rule(m, "r", {{"q_2", "a q_2"}}));
  m.rules.push_back(make_rule(m, "e", {{"q_1", "q_1"}}));
  auto c = symmetric_closure(m);
  REQUIRE(c.size() == 3);
  CHECK(c[0].ref() == RuleRef{0, false});
  CHECK(c[1].ref() == RuleRef{0, true});
  CHECK(c[2].ref() == RuleRef{1, false});
  CHECK(m.rule_name(c[1].ref()) == "r^-1");
}

TEST_CASE("accepts") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);

  auto at_accept = accepts(s, s.accept, {});
  CHECK(at_accept.outcome == SearchOutcome::accepted);
  CHECK(at_accept.trace->rules.empty());

  auto q   = parse_admissible(s, "q");
  auto res = accepts(s, q, {});
  REQUIRE(res.outcome == SearchOutcome::accepted);
  REQUIRE(res.trace->rules.size() == 2);
  CHECK(format_admissible(s, res.trace->words[1]) == "▷ a^-1 q_0 ◁");
  CHECK(s.rule_name(res.trace->rules[0]) == "r_1");
  CHECK(s.rule_name(res.trace->rules[1]) == "r_2^-1");
  CHECK_NOTHROW(check_trace(s, *res.trace));

  auto small = accepts(s, q, SearchBudget{1, 100});
  CHECK(small.outcome == SearchOutcome::unknown_budget);
  CHECK_THROWS_AS(accepts(s, q, SearchBudget{0, 100}), std::invalid_argument);
}

TEST_CASE("forward-only reachability is contained in the closed machine") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);
  std::vector<CompiledRule> forward;
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    forward.emplace_back(s, s.rules[i], RuleRef{i, false});
  }
  auto forward_accepts = [&](AdmissibleWord const& start) {
    std::deque<AdmissibleWord> queue{start};
    std::set<Word>             seen{start.flatten()};
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      if (w == s.accept) {
        return true;
      }
      for (auto const& r : forward) {
        auto next = r.apply(w);
        if (next && next->flatten().size() <= 8 && seen.insert(next->flatten()).second) {
          queue.push_back(*next);
        }
      }
    }
    return false;
  };
  std::size_t compared = 0;
  for (char const* state : {"q", "q_0"}) {
    for (char const* left : {"", "a", "a a", "a a a", "a^-1", "a^-1 a^-1"}) {
      auto w      = parse_admissible(s, std::string(left) + " " + state);
      bool closed = accepts(s, w, {}).outcome == SearchOutcome::accepted;
      if (forward_accepts(w)) {
        CHECK(closed);
      }
      ++compared;
    }
  }
  CHECK(compared == 12);
  CHECK_FALSE(forward_accepts(parse_admissible(s, "q")));
  CHECK(accepts(s, parse_admissible(s, "q"), {}).outcome == SearchOutcome::accepted);
}

TEST_CASE("trace_stats") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);

  ComputationTrace idle{{s.accept}, {}};
  auto             st = trace_stats(s, idle);
  CHECK(st.time == 0);
  CHECK(st.area == 1);

  auto run = accepts(s, parse_admissible(s, "q"), {});
  st       = trace_stats(s, *run.trace);
  CHECK(st.time == 2);
  CHECK(st.space == 2);
  CHECK(st.area == 4);

  auto m = chain(2);
  m.rules.push_back(make_rule(m, "e", {{"q_1", "q_1"}}));
  auto             w = parse_admissible(m, "q_1 a b q_2");
  ComputationTrace step{{w, w}, {RuleRef{0, false}}};
  st = trace_stats(m, step);
  CHECK(st.time == 1);
  CHECK(st.area == 2 * word_length(m, w));

  ComputationTrace bogus{{w, parse_admissible(m, "q_1 q_2")}, {RuleRef{0, false}}};
  CHECK_THROWS_AS(check_trace(m, bogus), std::invalid_argument);
}

TEST_CASE("admissible words") {
  auto m = chain(3);
  auto w = parse_admissible(m, "q_1 a b q_2 q_3");
  CHECK(w.states.size() == 3);
  CHECK(w.tapes[0].size() == 2);
  CHECK(w.tapes[1].empty());
  CHECK_THROWS_AS(parse_admissible(m, "q_2 q_1 q_3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_admissible(m, "a q_1 q_2 q_3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_admissible(m, "q_1 a a^-1 q_2 q_3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_admissible(m, "q_1 q_2"), std::invalid_argument);
  CHECK(format_admissible(m, w) == "q_1 a b q_2 q_3");
}
