#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "cgw/acceptance.hpp"

using namespace cgw;

TEST_CASE("fast criteria pass") {
  AcceptanceOptions o;
  for (int id : {1, 4, 6, 8, 10}) {
    auto r = run_criterion(id, o);
    CHECK_MESSAGE(r.status == CriterionStatus::pass, format_line(r));
  }
}

TEST_CASE("a starved budget gives unknown, not fail") {
  AcceptanceOptions o;
  o.budget_scale = 1e-6;
  auto r         = run_criterion(5, o);
  CHECK(r.status == CriterionStatus::unknown);
  CHECK(format_line(r).rfind("[UNKNOWN] 5 ", 0) == 0);
}

TEST_CASE("budget scale from the environment") {
  setenv("CGW_BUDGET_SCALE", "0.5", 1);
  CHECK(budget_scale_from_env() == doctest::Approx(0.5));
  setenv("CGW_BUDGET_SCALE", "-1", 1);
  CHECK_THROWS_AS(budget_scale_from_env(), std::invalid_argument);
  unsetenv("CGW_BUDGET_SCALE");
  CHECK(budget_scale_from_env() == 1.0);
  CHECK_THROWS_AS(run_criterion(11, {}), std::out_of_range);
}
