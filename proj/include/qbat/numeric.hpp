#pragma once

#include <functional>

namespace qbat {

using Fn1D = std::function<double(double)>;

/// Bracketed root finder: bisection refined by secant steps, no derivative
/// needed. Requires f(lo) and f(hi) of opposite sign; converges to |hi - lo|
/// <= tol_abs. Throws std::runtime_error if the bracket has no sign change.
double find_root(const Fn1D& f, double lo, double hi, double tol_abs = 1e-12);

struct MaxResult {
  double x;
  double value;
};

/// Derivative-free maximizer on (lo, hi]: coarse scan to bracket the global
/// maximum, golden-section narrowing, then a three-point parabolic polish to
/// push the localization below the sqrt(epsilon) comparison floor.
MaxResult maximize_scan_golden(const Fn1D& f, double lo, double hi,
                               int scan_points = 2048, double rel_tol = 1e-9);

}  // namespace qbat
