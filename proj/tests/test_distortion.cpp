#include <doctest.h>

#include "cgw/catalog.hpp"
#include "cgw/distortion.hpp"

using namespace cgw;

namespace {

  PairElement pair(EqualizerSpec const& spec, char const* u, char const* v) {
    return {parse_word(u, spec.x), spec.target.parse(v)};
  }

}  // namespace

TEST_CASE("equalizer_generators") {
  auto spec = z3_equalizer_spec();
  auto gens = equalizer_generators(spec);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].kind == GeneratorKind::mixed_x);
  CHECK(gens[0].pair == pair(spec, "x", "y"));
  CHECK(gens[1].kind == GeneratorKind::kernel);
  CHECK(gens[1].pair == pair(spec, "", "y y y"));

  auto free = free_equalizer_spec(2);
  auto fg   = equalizer_generators(free);
  CHECK(fg.size() == 2);
  for (auto const& g : fg) {
    CHECK(g.kind != GeneratorKind::kernel);
  }
}

TEST_CASE("verify_witnesses") {
  auto spec = z3_equalizer_spec();
  CHECK_NOTHROW(verify_witnesses(spec));
  spec.t[0] = spec.target.parse("y y");
  CHECK_THROWS_WITH_AS(verify_witnesses(spec, AreaBudget{6, 20000, 0}), doctest::Contains("t_1"),
                       std::invalid_argument);
}

TEST_CASE("membership") {
  auto spec  = z3_equalizer_spec();
  auto model = todd_coxeter(spec.target);
  REQUIRE(model);
  CHECK(membership(spec, pair(spec, "x", "y"), {}) == Membership::in);
  CHECK(membership(spec, pair(spec, "", "y y y"), {}) == Membership::in);
  CHECK(membership(spec, pair(spec, "x", "y y"), {}, &*model) == Membership::out);
  CHECK(membership(spec, pair(spec, "x", "y y"), AreaBudget{6, 20000, 0}) == Membership::unknown);
  CHECK(membership(spec, pair(spec, "x x", "y^-1"), {}, &*model) == Membership::in);
}

TEST_CASE("express") {
  auto spec = z3_equalizer_spec();
  auto gens = equalizer_generators(spec);

  auto e1 = express(spec, gens, pair(spec, "x", "y"));
  REQUIRE(e1.word);
  CHECK(e1.word->size() == 1);
  CHECK(e1.d == 0);

  auto e3 = express(spec, gens, pair(spec, "", "y y y"));
  REQUIRE(e3.word);
  CHECK(*e3.word == Word{make_letter(1)});
  CHECK(e3.d == 1);

  auto e6 = express(spec, gens, pair(spec, "", "y^6"));
  REQUIRE(e6.word);
  CHECK(e6.word->size() == 2);
  CHECK(e6.d == 2);

  auto mixed = pair(spec, "x x^-1 x", "y^-1 y^-1");
  mixed.u    = reduce(mixed.u);
  auto em    = express(spec, gens, mixed);
  REQUIRE(em.word);
  CHECK(evaluate(gens, *em.word) == mixed);
  CHECK(em.word->size() <= em.bound);

  auto outside = express(spec, gens, pair(spec, "x", ""), AreaBudget{6, 20000, 0});
  CHECK_FALSE(outside.word);
}

TEST_CASE("kernel factors are needed for (1, y^3k)") {
  auto spec = z3_equalizer_spec();
  auto gens = equalizer_generators(spec);
  for (long k = 1; k <= 2; ++k) {
    auto need = min_kernel_factors(gens, {Word{}, power(spec.target.parse("y"), 3 * k)}, 8);
    REQUIRE(need);
    CHECK(*need == static_cast<std::size_t>(k));
  }
  CHECK_FALSE(min_kernel_factors(gens, pair(spec, "x", ""), 6));
}

TEST_CASE("subgroup_ball") {
  auto spec = free_equalizer_spec(1);
  auto gens = equalizer_generators(spec);
  auto ball = subgroup_ball(gens, 3);
  CHECK(ball.size() == 7);
  CHECK(ball.at(pair(spec, "x_1 x_1", "y_1 y_1")) == 2);
}

TEST_CASE("distortion_sample") {
  auto free = free_equalizer_spec(2);
  for (auto const& row : distortion_sample(free, 4, {})) {
    CHECK(row.max_length <= row.n);
    CHECK(row.exact);
  }
  auto spec  = z3_equalizer_spec();
  auto model = todd_coxeter(spec.target);
  auto rows  = distortion_sample(spec, 6, {}, &*model);
  REQUIRE(rows.size() == 7);
  CHECK(rows[1].members == 0);
  CHECK(rows[2].max_length == 1);
  // (x^3, 1) = (x, y)^3 (1, y^3)^-1.
  CHECK(rows[3].max_length == 4);
  CHECK(rows[6].members > 0);
  auto ball = subgroup_ball(equalizer_generators(spec), 2);
  CHECK(ball.at(pair(spec, "", "y y y")) == 1);
}

TEST_CASE("Heisenberg group") {
  auto p = heisenberg_presentation();
  CHECK(heisenberg_image(p.parse("a b a^-1 b^-1")) == HeisenbergElement{0, 0, 1});
  CHECK(heisenberg_image(p.parse("c")) == HeisenbergElement{0, 0, 1});
  CHECK(heisenberg_image(p.parse("a a b")) == HeisenbergElement{2, 1, 2});
  CHECK(heisenberg_length({0, 0, 0}, 3) == 0);
  CHECK(heisenberg_length({0, 0, 1}, 8) == 4);
  CHECK(heisenberg_length({0, 0, 4}, 8) == 8);
  CHECK_FALSE(heisenberg_length({0, 0, 4}, 6));

  auto rows = heisenberg_demo(2, AreaBudget{32, 2'000'000, 14});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].length == 0);
  for (auto const& r : rows) {
    CHECK(r.certified);
    REQUIRE(r.length);
    CHECK(*r.length <= r.upper);
  }
  CHECK(rows[1].area == 1);

  for (std::size_t n = 1; n <= 3; ++n) {
    auto cert = heisenberg_collect_certificate(n);
    auto k    = static_cast<long>(n);
    Word w    = power(p.parse("c"), k * k);
    w.append(inverse(commutator(power(p.parse("a"), k), power(p.parse("b"), k))));
    CHECK(verify_certificate(cert, p, reduce(w)).valid());
  }
}
