#pragma once

#include <Eigen/Dense>
#include <functional>

#include "qbat/model.hpp"
#include "qbat/moments_ode.hpp"

namespace qbat {

/// Discretization of the master equation on the truncated two-mode Fock space.
struct FockConfig {
  int n_cut;                 ///< photon-number cutoff per mode; dimension (n_cut+1)^2
  double dt;                 ///< fixed RK4 step; needs dt*max(omega_b,g,gamma) <= 1e-2
  double t_max;              ///< final time (> 0)
  int output_stride = 100;   ///< record moments every this many steps
  bool check_positivity = true;  ///< eigen-check rho >= -1e-8 at recorded steps

  /// Cutoff with a generous truncation safety margin for pulse strength Omega.
  static int recommended_cutoff(double Omega);
};

/// Two-mode density matrix over the product basis |n_a, n_b>, flat index
/// i = n_a*(n_cut+1) + n_b.
struct DensityMatrix {
  Eigen::MatrixXcd rho;
  int n_cut;

  int mode_dim() const { return n_cut + 1; }
  int dim() const { return static_cast<int>(rho.rows()); }
};

struct DensityCheck {
  double herm_residual;    ///< max |rho - rho^dag|
  double trace_deviation;  ///< |Tr rho - 1|
  double min_eigenvalue;   ///< NaN when the spectrum was not computed
};

/// Hermiticity/trace/positivity diagnostics (positivity only if with_spectrum).
DensityCheck validate_density(const DensityMatrix& dm, bool with_spectrum);

/// Exact action of the delta pulse on the vacuum: the pure product coherent
/// state |alpha> (x) |0> with alpha = -i Omega on the charger. Throws
/// std::invalid_argument if the truncated norm deficit exceeds 1e-10
/// (n_cut too small for this Omega).
DensityMatrix pulse_initial_state(const BatteryParams& p, const FockConfig& cfg);

using RhoObserver = std::function<void(double t, const DensityMatrix&)>;

struct LindbladResult {
  MomentTrace trace;
  DensityMatrix rho_final;
};

/// Fixed-step RK4 propagation of
///   d rho/dt = i [rho, H] + (gamma/2)(2 a rho a^dag - a^dag a rho - rho a^dag a)
/// with the post-pulse Hamiltonian H = omega_b(a^dag a + b^dag b) + g(a^dag b + b^dag a).
/// Records moments every cfg.output_stride steps and validates the density
/// matrix there; throws std::runtime_error if the trace drifts beyond 1e-6 or
/// Hermiticity beyond 1e-9 (dt too large). The optional observer is invoked at
/// each recorded step.
LindbladResult evolve_lindblad(const DensityMatrix& rho0, const BatteryParams& p,
                               const FockConfig& cfg,
                               const RhoObserver& observer = {});

/// Reduced state of the holder: partial trace over the charger mode.
Eigen::MatrixXcd reduced_holder_state(const DensityMatrix& dm);

/// Maximum unitarily extractable work of the holder: Tr(rho_b H_b) minus the
/// passive-state energy (populations sorted descending against the ladder
/// energies omega_b k ascending). Always >= 0.
double ergotropy_numeric(const DensityMatrix& dm, const BatteryParams& p);

/// Worst-case product-state violation max_t |<b^dag b> - |<b>|^2| over a trace.
double factorization_residual(const MomentTrace& trace);

}  // namespace qbat
