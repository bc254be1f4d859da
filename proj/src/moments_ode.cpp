#include "qbat/moments_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbat {

namespace {

struct Psi {
  Complex a, b;
};

Psi operator+(Psi x, Psi y) { return {x.a + y.a, x.b + y.b}; }
Psi operator*(double s, Psi x) { return {s * x.a, s * x.b}; }

}  // namespace

MomentTrace integrate_first_moments(const BatteryParams& p, double dt,
                                    double t_max, int output_stride) {
  const double fastest = std::max({p.omega_b, p.g, p.gamma});
  if (!(dt > 0.0) || dt * fastest > 1e-2)
    throw std::invalid_argument(
        "integrate_first_moments: need 0 < dt and dt*max(omega_b,g,gamma) <= 1e-2");
  if (!(t_max > 0.0))
    throw std::invalid_argument("integrate_first_moments: t_max must be > 0");
  if (output_stride < 1) output_stride = 1;

  // psi' = -i H psi
  const Complex haa(p.omega_b, -0.5 * p.gamma);
  const Complex mi(0.0, -1.0);
  auto rhs = [&](const Psi& s) -> Psi {
    return {mi * (haa * s.a + p.g * s.b), mi * (p.g * s.a + p.omega_b * s.b)};
  };

  Psi psi{Complex(0.0, -p.Omega), Complex(0.0, 0.0)};
  const long n_steps = static_cast<long>(std::llround(t_max / dt));

  MomentTrace trace;
  trace.reserve(static_cast<size_t>(n_steps / output_stride) + 2);
  auto record = [&](double t, const Psi& s) {
    const double na = std::norm(s.a);
    const double nb = std::norm(s.b);
    trace.push_back({t, s.a, s.b, na, nb, nb});
  };

  record(0.0, psi);
  for (long i = 0; i < n_steps; ++i) {
    const Psi k1 = rhs(psi);
    const Psi k2 = rhs(psi + 0.5 * dt * k1);
    const Psi k3 = rhs(psi + 0.5 * dt * k2);
    const Psi k4 = rhs(psi + dt * k3);
    psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((i + 1) % output_stride == 0 || i + 1 == n_steps)
      record((i + 1) * dt, psi);
  }
  return trace;
}

}  // namespace qbat
