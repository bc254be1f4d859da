#pragma once

#include "qbat/model.hpp"
#include "qbat/numeric.hpp"

namespace qbat {

enum class OptMethod { ClosedForm, RootFound, NumericMaximizer };

const char* to_string(OptMethod m);

/// The two transcendental numbers governing the average-power optimum.
struct TranscendentalConstants {
  double zeta;  ///< 4 x*, x* the nonzero root of 2x = tanh(x)(1 + 2x); ~2.512862
  double Z;     ///< root of tan(y) = 2y on (0, pi/2); ~1.165561
};

/// Solves both defining equations to 1e-12 absolute.
TranscendentalConstants solve_transcendental_constants();

/// Cached copy of the solved constants.
const TranscendentalConstants& transcendental_constants();

// Optimal charging times and values. All require g > 0 (throw
// std::domain_error otherwise: the holder never charges). gamma = 0 routes to
// the dissipationless closed forms.
double optimal_energy_time(const BatteryParams& p);
double optimal_energy_value(const BatteryParams& p);
double optimal_inst_power_time(const BatteryParams& p);
double optimal_inst_power_value(const BatteryParams& p);
double optimal_avg_power_time(const BatteryParams& p);
double optimal_avg_power_value(const BatteryParams& p);

/// Three-branch analytic approximation of the average-power optimum time,
/// including the (g/gamma)^{3/2} and (gamma/g)^{3/4} corrections. An
/// approximation only; never used internally in place of the exact solver.
/// Requires g > 0 and gamma > 0.
double approx_avg_power_time(const BatteryParams& p);

enum class TargetQuantity { StoredEnergy, InstPower, AvgPower };

/// Independent derivative-free oracle: locates the global maximum of the
/// chosen quantity by coarse scan + golden section, never consulting the
/// closed forms. Public so any parameter point can be cross-validated.
MaxResult numeric_optimum(const BatteryParams& p, TargetQuantity q);

struct OptimaResult {
  double t_E;
  double E_at_tE;
  OptMethod method_E;
  double t_Pinst;
  double Pinst_max;
  OptMethod method_Pinst;
  double t_Pavg;
  double Pavg_max;
  OptMethod method_Pavg;
};

OptimaResult compute_optima(const BatteryParams& p);

/// The ten asymptotic estimates, each valid on one side of the EP:
/// *_weak holds for g << gamma/4, *_strong for g >> gamma/4.
/// Requires g > 0 and gamma > 0.
struct AsymptoticsTable {
  double t_E_weak, t_E_strong;
  double E_opt_weak, E_opt_strong;
  double t_Pinst_weak, t_Pinst_strong;
  double Pinst_opt_weak, Pinst_opt_strong;
  double Pavg_opt_weak, Pavg_opt_strong;
};

AsymptoticsTable asymptotics(const BatteryParams& p);

/// Dissipationless average-power peak: the quadratic-expansion approximation
/// z ~ (2 pi + sqrt(9 pi^2 - 60))/10 next to the exact root Z of tan(z) = 2z,
/// each with its peak power sin^2(z)/z (in units of omega_b Omega^2 g, at
/// time z/g).
struct AvgPowerPeak {
  double z_approx;
  double peak_approx;
  double z_exact;
  double peak_exact;
};

AvgPowerPeak dissipationless_avg_power_peak();

}  // namespace qbat
