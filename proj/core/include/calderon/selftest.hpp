#pragma once

#include <string>
#include <vector>

namespace calderon {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Bessel/Hankel values against an embedded extended-precision table (relative
/// error <= 1e-10) and the Wronskian J1 Y0 - J0 Y1 = 2 / (pi x) (<= 1e-9).
std::vector<CheckResult> special_function_checks();

/// circle(1), N = 4, eps = 1/6: ell = pi/2, K_ii = J_ii = -1/8, vanishing row
/// sums of the breakpoint differences in W, circulant V, K, J, W.
std::vector<CheckResult> hand_check_fixtures();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace calderon
