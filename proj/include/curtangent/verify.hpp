#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace curtangent {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Least-squares slope of log10(y) against log10(x), restricted to points
/// with y > floor. Returns NaN if fewer than two points survive.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double floor);

/// Rounding floor below which measured residuals are dominated by
/// floating-point noise: 1e3 * 2^-52 * scale.
double rounding_floor(double scale);

// Individual property checks. Instance counts default to the values the
// checks are specified with; seeds control all randomness.
CheckResult check_example41();
CheckResult check_exactness(std::uint64_t seed, int instances = 100);
CheckResult check_projector_properties(std::uint64_t seed, int instances = 100);
CheckResult check_derivative_slope(std::uint64_t seed, int instances = 50);
CheckResult check_fd_derivative_ratio(std::uint64_t seed, int instances = 50);
CheckResult check_truncation_bound(std::uint64_t seed, int instances = 500);
CheckResult check_appendix_a(std::uint64_t seed, int instances = 100);
CheckResult check_generic_prediction(std::uint64_t seed);
CheckResult check_structured_dichotomy(std::uint64_t seed);
CheckResult check_visibility(std::uint64_t seed);
CheckResult check_obliqueness_comparison(std::uint64_t seed, int instances = 200);
CheckResult check_csv_determinism(std::uint64_t seed);

/// suite is one of "projectors", "calculus", "bounds", "all".
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace curtangent
