#pragma once

#include "qbat/model.hpp"

namespace qbat {

/// First moments <a>(t), <b>(t) in the lab frame (the e^{-i omega_b t} phase
/// is kept so the values are directly comparable to the ODE oracle).
struct FirstMoments {
  Complex a;
  Complex b;
  double t;
};

/// One time sample of the three battery figures of merit.
struct EnergyRecord {
  double t;
  double E;       ///< stored energy, omega_b <b† b>
  double P_inst;  ///< dE/dt
  double P_avg;   ///< E/t (0 at t = 0)
};

/// Closed-form post-pulse first moments. t < 0 returns the pre-pulse vacuum.
FirstMoments first_moments(const BatteryParams& p, double t);

/// Stored energy E(t) = omega_b Omega^2 g^2 S(w,t)^2 e^{-gamma t/2}; equals
/// omega_b |<b>|^2 because the joint system stays in a product coherent state.
double stored_energy(const BatteryParams& p, double t);

/// Instantaneous power dE/dt.
double instantaneous_power(const BatteryParams& p, double t);

/// Average power E(t)/t, with limit 0 at t -> 0+. Throws std::domain_error
/// for t < 0.
double average_power(const BatteryParams& p, double t);

/// Extractable work of the holder. The holder evolves in a pure coherent
/// state, whose passive state is the ground state, so the ergotropy equals
/// the mean energy: this returns stored_energy(p, t).
double ergotropy_analytic(const BatteryParams& p, double t);

/// Convenience: all three measures at one time.
EnergyRecord energy_record(const BatteryParams& p, double t);

}  // namespace qbat
