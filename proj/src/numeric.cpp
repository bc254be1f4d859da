#include "qbat/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qbat {

double find_root(const Fn1D& f, double lo, double hi, double tol_abs) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root: no sign change on [" << a << ", " << b << "]: f(a)=" << fa
        << " f(b)=" << fb;
    throw std::runtime_error(msg.str());
  }

  for (int it = 0; it < 200 && (b - a) > tol_abs; ++it) {
    // Secant proposal from the bracket endpoints; fall back to bisection
    // whenever it leaves the (shrunk) interval or stalls.
    double x = a - fa * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!(x > a && x < b)) x = mid;
    // Keep a guaranteed geometric shrink: never accept a step closer than
    // 10% of the interval to an endpoint twice in a row; bisect instead.
    const double safety = 0.01 * (b - a);
    if (x - a < safety || b - x < safety) x = mid;

    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return 0.5 * (a + b);
}

namespace {

// Vertex of the parabola through (x - d, f0), (x, f1), (x + d, f2).
double parabola_vertex(const Fn1D& f, double x, double d) {
  const double f0 = f(x - d), f1 = f(x), f2 = f(x + d);
  const double denom = f0 - 2.0 * f1 + f2;
  if (!(denom < 0.0)) return x;  // no curvature signal: keep the point
  const double step = 0.5 * d * (f0 - f2) / denom;
  if (std::abs(step) > d) return x;
  return x + step;
}

}  // namespace

MaxResult maximize_scan_golden(const Fn1D& f, double lo, double hi,
                               int scan_points, double rel_tol) {
  if (!(hi > lo)) throw std::invalid_argument("maximize_scan_golden: empty interval");
  if (scan_points < 8) scan_points = 8;

  // Coarse scan for the global maximum sample (open at lo).
  const double h = (hi - lo) / scan_points;
  double best_x = lo + h, best_f = f(best_x);
  for (int i = 2; i <= scan_points; ++i) {
    const double x = lo + h * i;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }

  // Golden-section on the bracketing neighbours.
  double a = std::max(lo, best_x - h);
  double b = std::min(hi, best_x + h);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200; ++it) {
    if (b - a <= rel_tol * (std::abs(a) + std::abs(b)) + 1e-300) break;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);

  // Golden-section localization is noise-limited near sqrt(eps) relative; two
  // parabolic refinements at a wider spacing recover the extra digits.
  for (int pass = 0; pass < 2; ++pass) {
    const double d2 = 1e-5 * (std::abs(x) + 1e-300);
    x = parabola_vertex(f, x, d2);
  }
  return {x, f(x)};
}

}  // namespace qbat
