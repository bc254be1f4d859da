#pragma once

#include <complex>

namespace qbat {

using Complex = std::complex<double>;

/// Physical inputs of one battery instance (hbar = 1; all rates share one unit,
/// the library itself is unit-agnostic).
struct BatteryParams {
  double omega_b;  ///< oscillator level spacing (> 0)
  double g;        ///< charger-holder coupling rate (>= 0)
  double gamma;    ///< charger dissipation rate (>= 0)
  double Omega;    ///< dimensionless pulse strength (>= 0)

  /// Validates the invariants; throws std::invalid_argument on violation.
  BatteryParams(double omega_b, double g, double gamma, double Omega);

  /// Coupling at which the two dynamical eigenvalues coalesce.
  double g_ep() const { return 0.25 * gamma; }

  /// Regime discriminant w = g^2 - (gamma/4)^2, computed in the
  /// cancellation-friendly product form.
  double w() const { return (g - 0.25 * gamma) * (g + 0.25 * gamma); }
};

enum class Regime { BelowEP, AtEP, AboveEP };

/// Regime classification plus the renormalized rates. The rate that is not
/// defined in a given regime is quiet NaN; both are 0 exactly at the EP.
struct RegimeData {
  Regime regime;
  double w;      ///< g^2 - (gamma/4)^2
  double G;      ///< sqrt(w) above the EP
  double Gamma;  ///< sqrt(-w) below the EP
  double g_ep;   ///< gamma/4
};

struct EigenPair {
  Complex eps_plus;   ///< -> omega_b as g -> 0
  Complex eps_minus;  ///< -> omega_b - i gamma/2 as g -> 0
};

/// Classifies the coupling regime around the exceptional point. Total on valid
/// params; the AtEP label applies within |w| <= 1e-9 (gamma/4)^2.
RegimeData classify_regime(const BatteryParams& p);

/// The two complex eigenvalues of the first-moment dynamical matrix,
/// eps_± = omega_b - i gamma/4 ± G (± i Gamma below the EP).
EigenPair eigenvalues(const BatteryParams& p);

/// Branch-unified evaluator for sin(sqrt(w) t)/sqrt(w) | t | sinh(sqrt(-w) t)/sqrt(-w),
/// continuous through w = 0 to machine precision. Requires t >= 0, w finite.
double stable_S(double w, double t);

/// Companion evaluator: cos(sqrt(w) t) | 1 | cosh(sqrt(-w) t).
double stable_C(double w, double t);

namespace detail {

// Switch to the Taylor branch when |w t^2| is below this; the 4-term series
// error is O((w t^2)^4 / 9!), far below double epsilon at the boundary.
inline constexpr double series_switch = 1e-4;

// AtEP classification window, relative to (gamma/4)^2.
inline constexpr double ep_rel_tol = 1e-9;

// Both evaluation paths, exposed so tests can check they agree across the
// switch boundary.
double stable_S_series(double w, double t);
double stable_C_series(double w, double t);
double stable_S_direct(double w, double t);
double stable_C_direct(double w, double t);

}  // namespace detail

}  // namespace qbat
