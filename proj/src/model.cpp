#include "qbat/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qbat {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("BatteryParams: ") + what);
}

}  // namespace

BatteryParams::BatteryParams(double omega_b_, double g_, double gamma_, double Omega_)
    : omega_b(omega_b_), g(g_), gamma(gamma_), Omega(Omega_) {
  require(std::isfinite(omega_b) && omega_b > 0.0, "omega_b must be finite and > 0");
  require(std::isfinite(g) && g >= 0.0, "g must be finite and >= 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and >= 0");
  require(std::isfinite(Omega) && Omega >= 0.0, "Omega must be finite and >= 0");
}

RegimeData classify_regime(const BatteryParams& p) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double gep = p.g_ep();
  const double w = p.w();
  const double tol = detail::ep_rel_tol * gep * gep;

  RegimeData r{Regime::AtEP, w, nan, nan, gep};
  if (w > tol) {
    r.regime = Regime::AboveEP;
    r.G = std::sqrt(w);
  } else if (w < -tol) {
    r.regime = Regime::BelowEP;
    r.Gamma = std::sqrt(-w);
  } else {
    r.G = 0.0;
    r.Gamma = 0.0;
  }
  return r;
}

EigenPair eigenvalues(const BatteryParams& p) {
  const Complex base(p.omega_b, -0.25 * p.gamma);
  const RegimeData r = classify_regime(p);
  switch (r.regime) {
    case Regime::AboveEP:
      return {base + r.G, base - r.G};
    case Regime::BelowEP:
      // +i Gamma on eps_plus so that g -> 0 gives eps_plus = omega_b.
      return {base + Complex(0.0, r.Gamma), base - Complex(0.0, r.Gamma)};
    case Regime::AtEP:
    default:
      return {base, base};
  }
}

namespace detail {

double stable_S_series(double w, double t) {
  const double u = w * t * t;
  // t (1 - u/6 + u^2/120 - u^3/5040), Horner form
  return t * (1.0 - u / 6.0 * (1.0 - u / 20.0 * (1.0 - u / 42.0)));
}

double stable_C_series(double w, double t) {
  const double u = w * t * t;
  // 1 - u/2 + u^2/24 - u^3/720
  return 1.0 - u / 2.0 * (1.0 - u / 12.0 * (1.0 - u / 30.0));
}

double stable_S_direct(double w, double t) {
  if (w > 0.0) {
    const double r = std::sqrt(w);
    return std::sin(r * t) / r;
  }
  if (w < 0.0) {
    const double r = std::sqrt(-w);
    return std::sinh(r * t) / r;
  }
  return t;
}

double stable_C_direct(double w, double t) {
  if (w > 0.0) return std::cos(std::sqrt(w) * t);
  if (w < 0.0) return std::cosh(std::sqrt(-w) * t);
  return 1.0;
}

}  // namespace detail

double stable_S(double w, double t) {
  if (std::abs(w) * t * t < detail::series_switch) return detail::stable_S_series(w, t);
  return detail::stable_S_direct(w, t);
}

double stable_C(double w, double t) {
  if (std::abs(w) * t * t < detail::series_switch) return detail::stable_C_series(w, t);
  return detail::stable_C_direct(w, t);
}

}  // namespace qbat
