#include <doctest.h>

#include "cgw/catalog.hpp"
#include "cgw/io.hpp"

using namespace cgw;

TEST_CASE("parse errors carry line and column") {
  try {
    parse_json("{\n  \"a\": [1,\n  2,,\n}");
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(e.line == 3);
    CHECK(e.column > 0);
  }
}

TEST_CASE("presentation round trip") {
  auto p    = compile_gmn(1, 2, 2);
  auto back = presentation_from_json(parse_json(to_json(p).dump()));
  CHECK(back == p);
  auto j        = to_json(p);
  j["relators"][0] = "a_1#1 nosuch";
  CHECK_THROWS_AS(presentation_from_json(j), ParseError);
}

TEST_CASE("machine round trips") {
  auto tm = counterexample_tm();
  auto t2 = tm_from_json(to_json(tm));
  CHECK(t2.alphabet == tm.alphabet);
  CHECK(t2.transitions.size() == 2);
  CHECK(t2.accept == tm.accept);

  auto s  = naive_to_smachine(tm);
  auto s2 = smachine_from_json(to_json(s));
  CHECK(s2.alphabet == s.alphabet);
  CHECK(s2.rules == s.rules);
  CHECK(s2.accept == s.accept);
  CHECK(s2.delimiter_classes == s.delimiter_classes);

  auto bad = to_json(s);
  bad["rules"][0]["parts"][0]["V"] = "q q_0";
  CHECK_FALSE(validate_machine(smachine_from_json(bad)).empty());
  bad["rules"][0]["parts"][0]["V"] = "nosuch q_0";
  CHECK_THROWS_AS(smachine_from_json(bad), ParseError);
}

TEST_CASE("certificate and family round trips") {
  auto                  p = z2_presentation();
  TrivialityCertificate c;
  c.u = {p.parse("a"), p.parse("a^-1")};
  c.r = {p.parse("b a^-1 b^-1 a")};
  CHECK(certificate_from_json(to_json(c, p), p) == c);

  auto spec = z3_equalizer_spec();
  auto s2   = equalizer_from_json(to_json(spec));
  CHECK(s2.phi == spec.phi);
  CHECK(s2.t == spec.t);
  CHECK(s2.s == spec.s);

  WordFamily f;
  f.keys  = {"g", "h"};
  f.words = {parse_word("b_1 b_2", family_alphabet()), parse_word("b_2^-1", family_alphabet())};
  auto f2 = family_from_json(to_json(f), f.lambda);
  CHECK(f2.keys == f.keys);
  CHECK(f2.words == f.words);
}

TEST_CASE("digest") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") != digest("b"));
  CHECK(digest("abc").size() == 16);
}
