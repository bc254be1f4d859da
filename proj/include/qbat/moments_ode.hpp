#pragma once

#include <vector>

#include "qbat/model.hpp"

namespace qbat {

/// One recorded sample of the moment observables. For coherent-product
/// dynamics the populations coincide with |<a>|^2, |<b>|^2 and the holder
/// number statistics are Poissonian (var_nb = n_b).
struct MomentSample {
  double t;
  Complex a;
  Complex b;
  double n_a;
  double n_b;
  double var_nb;
};

using MomentTrace = std::vector<MomentSample>;

/// Fixed-step RK4 on the 2-component first-moment system
///   i d/dt (a, b) = H (a, b),  H = [[omega_b - i gamma/2, g], [g, omega_b]]
/// from the post-pulse initial condition (-i Omega, 0). An independent check
/// of the closed forms that never touches the Fock space.
/// Requires dt * max(omega_b, g, gamma) <= 1e-2 and t_max > 0; records every
/// output_stride steps (plus t = 0 and the final step).
MomentTrace integrate_first_moments(const BatteryParams& p, double dt,
                                    double t_max, int output_stride = 1);

}  // namespace qbat
