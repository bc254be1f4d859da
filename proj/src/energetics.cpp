#include "qbat/energetics.hpp"

#include <cmath>
#include <stdexcept>

namespace qbat {

FirstMoments first_moments(const BatteryParams& p, double t) {
  if (t < 0.0) return {Complex(0.0, 0.0), Complex(0.0, 0.0), t};
  const double w = p.w();
  const double S = stable_S(w, t);
  const double C = stable_C(w, t);
  const Complex phase = std::exp(Complex(-0.25 * p.gamma * t, -p.omega_b * t));
  const Complex a = Complex(0.0, -p.Omega) * (C - 0.25 * p.gamma * S) * phase;
  const Complex b = -p.Omega * p.g * S * phase;
  return {a, b, t};
}

double stored_energy(const BatteryParams& p, double t) {
  if (t <= 0.0) return 0.0;
  const double scale = p.omega_b * p.Omega * p.Omega;
  if (p.gamma == 0.0) {
    const double s = std::sin(p.g * t);
    return scale * s * s;
  }
  const double S = stable_S(p.w(), t);
  return scale * p.g * p.g * S * S * std::exp(-0.5 * p.gamma * t);
}

double instantaneous_power(const BatteryParams& p, double t) {
  if (t <= 0.0) return 0.0;
  const double scale = p.omega_b * p.Omega * p.Omega;
  if (p.gamma == 0.0) return scale * p.g * std::sin(2.0 * p.g * t);
  const double w = p.w();
  const double S = stable_S(w, t);
  const double C = stable_C(w, t);
  return scale * p.g * p.g * (2.0 * S * C - 0.5 * p.gamma * S * S) *
         std::exp(-0.5 * p.gamma * t);
}

double average_power(const BatteryParams& p, double t) {
  if (t < 0.0) throw std::domain_error("average_power: t must be >= 0");
  if (t == 0.0) return 0.0;  // E ~ t^2 near 0
  return stored_energy(p, t) / t;
}

double ergotropy_analytic(const BatteryParams& p, double t) {
  return stored_energy(p, t);
}

EnergyRecord energy_record(const BatteryParams& p, double t) {
  return {t, stored_energy(p, t), instantaneous_power(p, t),
          t > 0.0 ? stored_energy(p, t) / t : 0.0};
}

}  // namespace qbat
