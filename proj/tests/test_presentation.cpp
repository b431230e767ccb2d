#include <doctest.h>

#include <algorithm>

#include "cgw/catalog.hpp"
#include "cgw/presentation.hpp"

using namespace cgw;

namespace {

  bool has_relator(Presentation const& p, Word const& r) {
    auto key = cyclic_canonical_form(r);
    return std::any_of(p.relators().begin(), p.relators().end(),
                       [&](Word const& x) { return cyclic_canonical_form(x) == key; });
  }

}  // namespace

TEST_CASE("hub_word") {
  Alphabet base{"q_1", "q_2", "q_3", "a"};
  Alphabet target;
  auto     h = hub_word(parse_word("q_1 q_2 q_3", base), base, 28, target);
  CHECK(h.word.size() == 112);
  CHECK(h.copies == 28);
  CHECK(h.base_length == 3);

  Alphabet t2;
  auto     empty = hub_word(Word{}, base, 3, t2);
  CHECK(format_word(empty.word, t2) == "k_1 k_2 k_3");

  Alphabet t3;
  auto     h3 = hub_word(parse_word("a q_1 a q_2 a q_3", base), base, 2, t3);
  CHECK(h3.word.size() == 14);
  CHECK(format_word(h3.word, t3).rfind("k_1 a#1 q_1#1 a#1", 0) == 0);
}

TEST_CASE("compile_gmn") {
  auto p = compile_gmn(1, 3, 2);
  CHECK(p.alphabet().size() == 11);
  CHECK(p.relators().size() == 11);
  CHECK(p.count(Role::k) == 2);
  CHECK(p.count(Role::state) == 6);
  CHECK(p.count(Role::tape) == 2);
  CHECK(p.count(Role::rule) == 1);
  Alphabet base{"q_1", "q_2", "q_3"};
  Alphabet scratch;
  auto     hub = hub_word(parse_word("q_1 q_2 q_3", base), base, 2, scratch);
  CHECK(p.relators().back() == transfer(hub.word, scratch, p.alphabet()));
  CHECK(has_relator(p, p.parse("r_1 q_2#1 r_1^-1 q_2#1^-1 a_1#1^-1")));
  CHECK(has_relator(p, p.parse("k_2 r_1 k_2^-1 r_1^-1")));

  for (std::size_t m = 1; m <= 2; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t N : {1, 2, 28}) {
        auto g = compile_gmn(m, n, N);
        CHECK(g.alphabet().size() == N * (1 + n + m) + m);
        CHECK(g.relators().size() == N * (n * m + m * m + m) + 1);
        CHECK(g.relators().back().size() == N * (1 + n));
      }
    }
  }
}

TEST_CASE("compile_gm on the counterexample machine") {
  auto tm = counterexample_tm();
  auto p  = compile_gm(tm, 2);
  for (std::size_t i = 1; i <= 2; ++i) {
    auto c = "#" + std::to_string(i);
    CHECK(has_relator(p, p.parse("r_1 a" + c + " q" + c + " r_1^-1 q_0" + c + "^-1")));
    CHECK(has_relator(p, p.parse("r_2 a" + c + " q_0" + c + " r_2^-1 q_0" + c + "^-1")));
    CHECK(has_relator(p, p.parse("a" + c + " r_1 a" + c + "^-1 r_1^-1")));
    CHECK(has_relator(p, p.parse("k_" + std::to_string(i) + " r_2 k_" + std::to_string(i)
                                 + "^-1 r_2^-1")));
  }
  CHECK(p.relators().back() == p.parse("k_1 q_0#1 k_2 q_0#2"));
  CHECK(p.copies == 2);
}

TEST_CASE("compile_gns") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);
  auto p  = compile_gns(s, 2);
  CHECK_FALSE(p.alphabet().find(kLeftDelimiter));
  CHECK(has_relator(p, p.parse("r_1 q#1 r_1^-1 q_0#1^-1 a#1")));
  CHECK(p.relators().back() == gns_hub(s, p, s.accept));
  CHECK(p.relators().back() == p.parse("k_1 q_0#1 k_2 q_0#2"));

  // One relator per part per copy, plus commutators and the hub.
  auto g      = gmn_machine(2, 3);
  auto parts  = std::size_t{0};
  for (auto const& r : g.rules) {
    parts += r.parts.size();
  }
  auto gp = compile_gns(g, 2);
  CHECK(gp.relators().size() == 2 * (parts + 2 * 2 + 2) + 1);

  for (std::size_t N : {1, 2, 5}) {
    CHECK(shape_of(compile_gns(gmn_machine(1, 3), N)) == shape_of(compile_gmn(1, 3, N)));
    CHECK(shape_of(compile_gns(gmn_machine(2, 2), N)) == shape_of(compile_gmn(2, 2, N)));
  }
}

TEST_CASE("compile_hmn") {
  auto base = compile_gmn(1, 3, 2);
  auto h    = compile_hmn(base, 1);
  CHECK(h.alphabet().size() == base.alphabet().size() + 2);
  CHECK(h.count(Role::rho) == 1);
  CHECK(h.count(Role::b) == 1);
  REQUIRE(h.relators().size() == base.relators().size() + 15);
  for (std::size_t i = base.relators().size(); i < h.relators().size(); ++i) {
    CHECK(h.relators()[i].size() <= 5);
  }
  CHECK(has_relator(h, h.parse("rho a_1#1 rho^-1 b_1^-1 a_1#1^-1")));
  CHECK_THROWS_AS(compile_hmn(base, 2), std::invalid_argument);
}

TEST_CASE("presentation basics") {
  Presentation p;
  p.add_generator("a", Role::tape, 1, "a");
  p.add_generator("b", Role::other);
  CHECK(p.info(0).base == "a");
  CHECK(p.info(0).copy == 1);
  CHECK_THROWS_AS(p.add_relator(Word{}), std::invalid_argument);
  CHECK_THROWS_AS(p.add_relator(p.parse("a b b^-1")), std::invalid_argument);
  CHECK_THROWS_AS(p.add_relator(p.parse("a b a^-1")), std::invalid_argument);
  CHECK_THROWS_AS(p.add_relator(Word{make_letter(5)}), std::invalid_argument);
  p.add_relation(p.parse("a b"), p.parse("b a"));
  CHECK(p.relators().size() == 1);
  CHECK(p.format(p.relators()[0]) == "a b a^-1 b^-1");
  CHECK(role_from_string(to_string(Role::rho)) == Role::rho);

  Alphabet other{"b", "a"};
  CHECK(transfer(p.parse("a b^-1"), p.alphabet(), other) == parse_word("a b^-1", other));
}
