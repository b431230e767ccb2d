#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cgw {

  enum class CriterionStatus { pass, fail, unknown };
  std::string_view to_string(CriterionStatus s);

  struct CriterionResult {
    int             id = 0;
    std::string     name;
    CriterionStatus status = CriterionStatus::fail;
    std::string     detail;
    double          seconds       = 0;
    double          limit_seconds = 0;
  };

  struct AcceptanceOptions {
    // Multiplies every search budget; below 1 some criteria may come out
    // "unknown".
    double        budget_scale = 1.0;
    std::uint64_t seed         = 20240601;
  };

  // CGW_BUDGET_SCALE, or 1.  Throws std::invalid_argument if it is set but
  // not a positive number.
  double budget_scale_from_env();

  inline constexpr int kCriteria = 10;

  // Runs one criterion (1..kCriteria).  A criterion that takes longer than
  // its limit fails.  Exceptions are reported as failures.
  CriterionResult run_criterion(int id, AcceptanceOptions const& options);

  std::vector<CriterionResult>
  run_acceptance(AcceptanceOptions const&                      options,
                 std::function<void(CriterionResult const&)> const& on_result = {});

  // "[PASS] 3 heisenberg (0.12 s / 120 s): ..."
  std::string format_line(CriterionResult const& r);

}  // namespace cgw
