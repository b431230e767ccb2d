#include <doctest.h>

#include <cmath>

#include "cgw/length_embed.hpp"

using namespace cgw;

namespace {

  std::vector<std::pair<std::string, std::size_t>> lengths(std::size_t count,
                                                           std::size_t first) {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.emplace_back("g_" + std::to_string(i + 1), first + i);
    }
    return out;
  }

}  // namespace

TEST_CASE("check_axioms on a word metric") {
  auto report = check_axioms(free_group_sample(2, 3));
  CHECK(report.violations.empty());
  CHECK(report.fitted_c <= 5.0 + 1e-9);
  CHECK(report.fitted_c >= 3.0);
  CHECK_FALSE(report.warning);
}

TEST_CASE("check_axioms finds D1 and D2 violations") {
  auto asym = cyclic_sample(3, [](long i) { return static_cast<std::size_t>(i); });
  asym.length.at("1")  = 1;
  asym.length.at("-1") = 2;
  auto report          = check_axioms(asym);
  bool d1              = false;
  for (auto const& v : report.violations) {
    d1 = d1 || v.clause == AxiomClause::symmetry;
  }
  CHECK(d1);

  auto square = check_axioms(cyclic_sample(4, [](long i) { return static_cast<std::size_t>(i * i); }));
  REQUIRE_FALSE(square.violations.empty());
  CHECK(square.violations[0].clause == AxiomClause::subadditivity);
  CHECK(to_string(AxiomClause::subadditivity) == "D2");
}

TEST_CASE("square-root lengths are subadditive; fitted c is reported per radius") {
  auto f = [](long i) {
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(i))));
  };
  auto report = check_axioms(cyclic_sample(50, f));
  CHECK(report.violations.empty());
  REQUIRE(report.c_by_radius.size() >= 5);
  // |ball(r)| = 2 r^2 + 1.
  CHECK(report.c_by_radius[0] == doctest::Approx(3.0));
  CHECK(report.c_by_radius[1] == doctest::Approx(3.0));
  CHECK(report.c_by_radius[2] == doctest::Approx(std::pow(19.0, 1.0 / 3)));
}

TEST_CASE("check_axioms reports missing products") {
  auto s = free_group_sample(1, 2);
  s.length.erase("x_1 x_1 x_1 x_1");
  CHECK_THROWS_AS(check_axioms(s), std::out_of_range);
}

TEST_CASE("verify_star_star") {
  auto  alphabet = family_alphabet();
  Word  periodic = parse_word("b_1 b_2 b_1 b_2 b_1 b_2 b_1 b_2", alphabet);
  auto  r        = verify_star_star({periodic}, 0.5);
  CHECK(r.defect == StarStarDefect::repeated);
  CHECK(r.y.size() == 4);
  CHECK(periodic.subword(r.h_pos, 4) == r.y);
  CHECK(r.g_pos != r.h_pos);

  Word x = parse_word("b_1 b_1 b_2 b_1^-1 b_2 b_2", alphabet);
  CHECK(verify_star_star({x}, 0.5).pass());
  auto same = verify_star_star({x, x}, 0.5);
  CHECK(same.defect == StarStarDefect::in_other);

  Word own = parse_word("b_1 b_2 b_2 b_1 b_2^-1 b_2^-1 b_1^-1 b_1", alphabet);
  CHECK(verify_star_star({own}, 0.25).defect == StarStarDefect::in_own_inverse);
}

TEST_CASE("generate_family") {
  FamilyOptions options;
  auto          family = generate_family(lengths(100, 100), options);
  CHECK(verify_star_star(family).pass());
  REQUIRE(family.words.size() == 100);
  for (std::size_t i = 0; i < family.words.size(); ++i) {
    auto l = static_cast<double>(100 + i);
    auto n = static_cast<double>(family.words[i].size());
    CHECK(is_reduced(family.words[i]));
    CHECK(l <= n);
    CHECK(n < family.stretch * l);
  }
  auto again = generate_family(lengths(100, 100), options);
  CHECK(again.words == family.words);

  CHECK_THROWS_AS(generate_family(lengths(2, 10), options), std::invalid_argument);
  options.min_length = 50;
  CHECK(verify_star_star(generate_family(lengths(100, 50), options)).pass());
  CHECK(verify_star_star(generate_family(lengths(1, 100), {})).pass());
}

TEST_CASE("product_lower_bound_check") {
  auto family = generate_family(lengths(20, 100), {});
  auto report = product_lower_bound_check(family.words, family.lambda, 500, 3);
  CHECK(report.trials == 500);
  CHECK(report.violations == 0);
  CHECK(report.min_ratio >= 0.96);

  auto single = product_lower_bound_check(family.words, family.lambda, 50, 3, 1);
  CHECK(single.min_ratio == doctest::Approx(1.0));

  // X_2 = X_1 with its last letters inverted: X_1 X_2^-1 collapses.
  auto alphabet = family_alphabet();
  Word x1       = family.words[0];
  Word x2       = x1.subword(0, x1.size() - 2);
  x2.push_back(x1[x1.size() - 1] == 1 ? 2 : 1);
  x2.push_back(x1[x1.size() - 1] == 1 ? 2 : 1);
  auto bad = product_lower_bound_check({x1, x2}, family.lambda, 200, 5, 2);
  CHECK_FALSE(verify_star_star({x1, x2}, family.lambda).pass());
  CHECK(bad.violations > 0);
  CHECK(bad.min_ratio < 0.96);
}
