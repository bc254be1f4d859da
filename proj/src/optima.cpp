#include "qbat/optima.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbat/energetics.hpp"

namespace qbat {

namespace {

constexpr double pi = std::numbers::pi;

void require_coupled(const BatteryParams& p) {
  if (p.g <= 0.0)
    throw std::domain_error("optima: g = 0 stores no energy, no optimum exists");
}

// Nonzero root of 2x = tanh(x) [1 + c x] with c >= 2 (c = gamma/2Gamma, or the
// g -> 0 limit c = 2). The trivial root at 0 is excluded by starting the
// bracket at 1e-3; when the physical root itself lies below that (c large,
// close to the EP) the lower end is shrunk until f > 0 ahead of the root.
double solve_below_ep_turning_point(double c) {
  auto f = [c](double x) { return 2.0 * x - std::tanh(x) * (1.0 + c * x); };
  double lo = 1e-3;
  while (f(lo) <= 0.0 && lo > 1e-290) lo *= 0.5;
  if (f(lo) <= 0.0) throw std::runtime_error("optima: below-EP bracket collapsed");
  double hi = 1.0;
  while (f(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  return find_root(f, lo, hi, 1e-12);
}

// Nonzero root of 2y = tan(y) [1 + c y] on (0, pi/2), c >= 0.
double solve_above_ep_turning_point(double c) {
  auto f = [c](double y) { return 2.0 * y - std::tan(y) * (1.0 + c * y); };
  double lo = 1e-3;
  while (f(lo) <= 0.0 && lo > 1e-290) lo *= 0.5;
  if (f(lo) <= 0.0) throw std::runtime_error("optima: above-EP bracket collapsed");
  return find_root(f, lo, 0.5 * pi - 1e-9, 1e-12);
}

}  // namespace

const char* to_string(OptMethod m) {
  switch (m) {
    case OptMethod::ClosedForm: return "closed_form";
    case OptMethod::RootFound: return "root_found";
    case OptMethod::NumericMaximizer: return "numeric_maximizer";
  }
  return "unknown";
}

TranscendentalConstants solve_transcendental_constants() {
  TranscendentalConstants c{};
  c.Z = find_root([](double y) { return std::tan(y) - 2.0 * y; }, 1e-3,
                  0.5 * pi - 1e-9, 1e-12);
  const double xs = find_root(
      [](double x) { return 2.0 * x - std::tanh(x) * (1.0 + 2.0 * x); }, 1e-3,
      5.0, 1e-12);
  c.zeta = 4.0 * xs;
  return c;
}

const TranscendentalConstants& transcendental_constants() {
  static const TranscendentalConstants c = solve_transcendental_constants();
  return c;
}

double optimal_energy_time(const BatteryParams& p) {
  require_coupled(p);
  if (p.gamma == 0.0) return 0.5 * pi / p.g;
  const RegimeData r = classify_regime(p);
  switch (r.regime) {
    case Regime::BelowEP:
      return std::atanh(4.0 * r.Gamma / p.gamma) / r.Gamma;
    case Regime::AboveEP:
      return std::atan(4.0 * r.G / p.gamma) / r.G;
    case Regime::AtEP:
    default:
      return 4.0 / p.gamma;
  }
}

double optimal_energy_value(const BatteryParams& p) {
  require_coupled(p);
  const double scale = p.omega_b * p.Omega * p.Omega;
  if (p.gamma == 0.0) return scale;
  // All three regime expressions reduce to e^{-gamma t_E / 2}: at the optimum
  // the (g/G)^2 sin^2 prefactor equals 1 identically.
  return scale * std::exp(-0.5 * p.gamma * optimal_energy_time(p));
}

namespace {

double inst_power_time_closed(const BatteryParams& p, bool* fell_back) {
  if (fell_back) *fell_back = false;
  if (p.gamma == 0.0) return 0.25 * pi / p.g;
  // The printed arctan/arctanh arguments are 0/0 at 16 g^2 = 3 gamma^2;
  // rationalizing gives the everywhere-regular equivalent
  //   4G / (2 gamma + sqrt(gamma^2 + 16 g^2))   (G -> Gamma below the EP),
  // whose arctanh argument is bounded by 1/3 below the EP.
  const double hyp = std::sqrt(p.gamma * p.gamma + 16.0 * p.g * p.g);
  const RegimeData r = classify_regime(p);
  switch (r.regime) {
    case Regime::AboveEP:
      return std::atan(4.0 * r.G / (2.0 * p.gamma + hyp)) / r.G;
    case Regime::BelowEP: {
      const double arg = 4.0 * r.Gamma / (2.0 * p.gamma + hyp);
      if (!(arg > -1.0 && arg < 1.0)) {
        if (fell_back) *fell_back = true;
        return numeric_optimum(p, TargetQuantity::InstPower).x;
      }
      return std::atanh(arg) / r.Gamma;
    }
    case Regime::AtEP:
    default:
      return 2.0 * (2.0 - std::sqrt(2.0)) / p.gamma;
  }
}

}  // namespace

double optimal_inst_power_time(const BatteryParams& p) {
  require_coupled(p);
  return inst_power_time_closed(p, nullptr);
}

double optimal_inst_power_value(const BatteryParams& p) {
  // No separate closed form exists; composition with the optimal time.
  return instantaneous_power(p, optimal_inst_power_time(p));
}

double optimal_avg_power_time(const BatteryParams& p) {
  require_coupled(p);
  if (p.gamma == 0.0) return transcendental_constants().Z / p.g;
  const RegimeData r = classify_regime(p);
  switch (r.regime) {
    case Regime::BelowEP:
      return solve_below_ep_turning_point(0.5 * p.gamma / r.Gamma) / r.Gamma;
    case Regime::AboveEP:
      return solve_above_ep_turning_point(0.5 * p.gamma / r.G) / r.G;
    case Regime::AtEP:
    default:
      return 2.0 / p.gamma;
  }
}

double optimal_avg_power_value(const BatteryParams& p) {
  return average_power(p, optimal_avg_power_time(p));
}

double approx_avg_power_time(const BatteryParams& p) {
  require_coupled(p);
  if (p.gamma <= 0.0)
    throw std::domain_error("approx_avg_power_time: requires gamma > 0");
  const TranscendentalConstants& tc = transcendental_constants();
  const RegimeData r = classify_regime(p);
  switch (r.regime) {
    case Regime::BelowEP:
      return (tc.zeta -
              8.0 * (tc.zeta - 2.0) * std::pow(p.g / p.gamma, 1.5)) /
             p.gamma;
    case Regime::AboveEP:
      return (tc.Z - (2.0 * tc.Z - 1.0) / (4.0 * std::sqrt(2.0)) *
                         std::pow(p.gamma / p.g, 0.75)) /
             p.g;
    case Regime::AtEP:
    default:
      return 2.0 / p.gamma;
  }
}

MaxResult numeric_optimum(const BatteryParams& p, TargetQuantity q) {
  require_coupled(p);

  // Search horizon: the first oscillation period above the EP, otherwise an
  // envelope-scale window that covers the logarithmically growing t_E of
  // weakly coupled batteries.
  double horizon;
  if (p.gamma == 0.0) {
    horizon = pi / p.g;
  } else {
    horizon = (4.0 * std::max(0.0, std::log(0.5 * p.gamma / p.g)) + 24.0) / p.gamma;
    const RegimeData r = classify_regime(p);
    if (r.regime == Regime::AboveEP) horizon = std::min(horizon, pi / r.G);
  }

  Fn1D f;
  switch (q) {
    case TargetQuantity::StoredEnergy:
      f = [&p](double t) { return stored_energy(p, t); };
      break;
    case TargetQuantity::InstPower:
      f = [&p](double t) { return instantaneous_power(p, t); };
      break;
    case TargetQuantity::AvgPower:
    default:
      f = [&p](double t) { return t > 0.0 ? stored_energy(p, t) / t : 0.0; };
      break;
  }
  return maximize_scan_golden(f, 0.0, horizon);
}

OptimaResult compute_optima(const BatteryParams& p) {
  require_coupled(p);
  OptimaResult out{};

  out.t_E = optimal_energy_time(p);
  out.E_at_tE = optimal_energy_value(p);
  out.method_E = OptMethod::ClosedForm;

  bool fell_back = false;
  out.t_Pinst = inst_power_time_closed(p, &fell_back);
  out.Pinst_max = instantaneous_power(p, out.t_Pinst);
  out.method_Pinst =
      fell_back ? OptMethod::NumericMaximizer : OptMethod::ClosedForm;

  out.t_Pavg = optimal_avg_power_time(p);
  out.Pavg_max = average_power(p, out.t_Pavg);
  const Regime regime = classify_regime(p).regime;
  out.method_Pavg = (p.gamma > 0.0 && regime == Regime::AtEP)
                        ? OptMethod::ClosedForm
                        : OptMethod::RootFound;
  return out;
}

AsymptoticsTable asymptotics(const BatteryParams& p) {
  require_coupled(p);
  if (p.gamma <= 0.0) throw std::domain_error("asymptotics: requires gamma > 0");

  const double scale = p.omega_b * p.Omega * p.Omega;
  const double g = p.g, gam = p.gamma;
  const TranscendentalConstants& tc = transcendental_constants();

  AsymptoticsTable t{};
  t.t_E_weak = 4.0 / gam * std::log(0.5 * gam / g);
  t.t_E_strong = 0.5 * pi / g - 0.25 * gam / (g * g);
  t.E_opt_weak = scale * (2.0 * g / gam) * (2.0 * g / gam);
  t.E_opt_strong = scale * (1.0 - 0.25 * pi * gam / g);
  t.t_Pinst_weak =
      std::log(4.0) / gam - 16.0 * (1.0 - std::log(2.0)) * g * g / (gam * gam * gam);
  t.t_Pinst_strong = (pi - gam / g) / (4.0 * g);
  t.Pinst_opt_weak = scale * g * g / gam;
  t.Pinst_opt_strong = scale * g * (1.0 - (pi + 2.0) / 8.0 * gam / g);
  const double pref_weak =
      std::sinh(0.25 * tc.zeta) * std::sinh(0.25 * tc.zeta) *
      std::exp(-0.5 * tc.zeta) / tc.zeta;
  const double pref_strong = std::sin(tc.Z) * std::sin(tc.Z) / tc.Z;
  t.Pavg_opt_weak = pref_weak * scale * (4.0 * g) * (4.0 * g) / gam;
  t.Pavg_opt_strong = pref_strong * scale * g;
  return t;
}

AvgPowerPeak dissipationless_avg_power_peak() {
  AvgPowerPeak out{};
  out.z_approx = (2.0 * pi + std::sqrt(9.0 * pi * pi - 60.0)) / 10.0;
  out.z_exact = transcendental_constants().Z;
  auto peak = [](double z) { return std::sin(z) * std::sin(z) / z; };
  out.peak_approx = peak(out.z_approx);
  out.peak_exact = peak(out.z_exact);
  return out;
}

}  // namespace qbat
