#include <cstdio>
#include <exception>

#include "cgw/acceptance.hpp"

int main() {
  cgw::AcceptanceOptions options;
  try {
    options.budget_scale = cgw::budget_scale_from_env();
  } catch (std::exception const& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  int failed = 0;
  cgw::run_acceptance(options, [&](cgw::CriterionResult const& r) {
    std::printf("%s\n", cgw::format_line(r).c_str());
    std::fflush(stdout);
    failed += r.status == cgw::CriterionStatus::pass ? 0 : 1;
  });
  std::printf("%d/%d criteria passed\n", cgw::kCriteria - failed, cgw::kCriteria);
  return failed == 0 ? 0 : 1;
}
