#include "qbat/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qbat {

int FockConfig::recommended_cutoff(double Omega) {
  return static_cast<int>(std::ceil(Omega * Omega + 6.0 * Omega + 10.0));
}

namespace {

void validate_config(const BatteryParams& p, const FockConfig& cfg) {
  if (cfg.n_cut < 1) throw std::invalid_argument("FockConfig: n_cut must be >= 1");
  const double fastest = std::max({p.omega_b, p.g, p.gamma});
  if (!(cfg.dt > 0.0) || cfg.dt * fastest > 1e-2 + 1e-15)
    throw std::invalid_argument(
        "FockConfig: need 0 < dt and dt*max(omega_b,g,gamma) <= 1e-2");
  if (!(cfg.t_max > 0.0)) throw std::invalid_argument("FockConfig: t_max must be > 0");
}

// Sparse structure of the post-pulse generator. H couples |n_a, n_b> only to
// |n_a±1, n_b∓1> (flat offset ±(D-1)); the jump a shifts n_a by one block
// (flat offset D). Everything the RHS needs is three coefficient vectors.
//
// The right-hand side is evaluated per column of the (column-major) density
// matrix in plain real arithmetic, with the overall factor i folded into the
// coefficients; all inner loops are unit-stride so the compiler vectorizes
// them. std::complex<double> guarantees the (re, im) array layout that the
// reinterpret_casts below rely on.
struct Generator {
  int D;  // mode dimension n_cut + 1
  int N;  // D^2
  std::vector<double> h_re;   // omega_b (n_a + n_b)
  std::vector<double> h_im;   // -(gamma/2) n_a, the Heff anti-Hermitian part
  std::vector<double> k_up;   // row i <- column i+(D-1): g sqrt((n_a+1) n_b)
  std::vector<double> k_dn;   // row i <- column i-(D-1): g sqrt(n_a (n_b+1))
  std::vector<double> jump;   // sqrt(n_a+1) for rows with n_a < n_cut
  double gamma;

  Generator(const BatteryParams& p, int n_cut)
      : D(n_cut + 1), N(D * D), h_re(N), h_im(N), k_up(N), k_dn(N),
        jump(static_cast<size_t>(N - D)), gamma(p.gamma) {
    for (int na = 0; na < D; ++na) {
      for (int nb = 0; nb < D; ++nb) {
        const int i = na * D + nb;
        h_re[i] = p.omega_b * (na + nb);
        h_im[i] = -0.5 * p.gamma * na;
        k_up[i] = (na < n_cut && nb >= 1) ? p.g * std::sqrt(double(na + 1) * nb) : 0.0;
        k_dn[i] = (na >= 1 && nb < n_cut) ? p.g * std::sqrt(double(na) * (nb + 1)) : 0.0;
        if (na < n_cut) jump[i] = std::sqrt(double(na + 1));
      }
    }
  }

  // out = i (rho Heff^dag - Heff rho) + gamma a rho a^dag with
  // Heff = H - i(gamma/2) a^dag a; this is i[rho, H] plus the full
  // dissipator, the anticommutator part absorbed into Heff.
  void rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    const int s = D - 1;
    const size_t col = 2 * static_cast<size_t>(N);  // doubles per column
    const double* __restrict__ X = reinterpret_cast<const double*>(rho.data());
    double* __restrict__ O = reinterpret_cast<double*>(out.data());

    for (int c = 0; c < N; ++c) {
      const double* __restrict__ xc = X + col * c;
      double* __restrict__ oc = O + col * c;

      // i (conj(hd[c]) - hd[i]) rho[i,c] - i k_up[i] rho[i+s,c]
      //                                  - i k_dn[i] rho[i-s,c]
      // in one write pass, range-split so the bulk loop has no bound checks
      // (k_up/k_dn are zero exactly where a shifted index would be invalid).
      const double ec = h_re[c], dc = h_im[c];
      auto diag_term = [&](int i, double& vr, double& vi) {
        const double cr = dc + h_im[i];
        const double ci = ec - h_re[i];
        const double xr = xc[2 * i], xi = xc[2 * i + 1];
        vr = cr * xr - ci * xi;
        vi = cr * xi + ci * xr;
      };
      for (int i = 0; i < s; ++i) {
        double vr, vi;
        diag_term(i, vr, vi);
        oc[2 * i] = vr + k_up[i] * xc[2 * (i + s) + 1];
        oc[2 * i + 1] = vi - k_up[i] * xc[2 * (i + s)];
      }
      for (int i = s; i < N - s; ++i) {
        double vr, vi;
        diag_term(i, vr, vi);
        oc[2 * i] = vr + k_up[i] * xc[2 * (i + s) + 1] + k_dn[i] * xc[2 * (i - s) + 1];
        oc[2 * i + 1] = vi - k_up[i] * xc[2 * (i + s)] - k_dn[i] * xc[2 * (i - s)];
      }
      for (int i = N - s; i < N; ++i) {
        double vr, vi;
        diag_term(i, vr, vi);
        oc[2 * i] = vr + k_dn[i] * xc[2 * (i - s) + 1];
        oc[2 * i + 1] = vi - k_dn[i] * xc[2 * (i - s)];
      }
      // +i k_up[c] rho[i, c+s]
      if (k_up[c] != 0.0) {
        const double k = k_up[c];
        const double* __restrict__ xn = X + col * (c + s);
        for (int i = 0; i < N; ++i) {
          oc[2 * i] -= k * xn[2 * i + 1];
          oc[2 * i + 1] += k * xn[2 * i];
        }
      }
      // +i k_dn[c] rho[i, c-s]
      if (k_dn[c] != 0.0) {
        const double k = k_dn[c];
        const double* __restrict__ xn = X + col * (c - s);
        for (int i = 0; i < N; ++i) {
          oc[2 * i] -= k * xn[2 * i + 1];
          oc[2 * i + 1] += k * xn[2 * i];
        }
      }
      // gamma jump[i] jump[c] rho[i+D, c+D]
      if (gamma != 0.0 && c < N - D) {
        const double kc = gamma * jump[c];
        const double* __restrict__ xd = X + col * (c + D) + 2 * D;  // rows shifted by D
        for (int i = 0; i < N - D; ++i) {
          const double k = kc * jump[i];
          oc[2 * i] += k * xd[2 * i];
          oc[2 * i + 1] += k * xd[2 * i + 1];
        }
      }
    }
  }
};

// Flat single-pass helpers for the RK4 stage algebra (unit-stride loops;
// single-output passes stream best here).
void stage_axpy(double a, const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& rho,
                Eigen::MatrixXcd& out) {
  const size_t total = 2 * static_cast<size_t>(rho.size());
  const double* __restrict__ K = reinterpret_cast<const double*>(k.data());
  const double* __restrict__ R = reinterpret_cast<const double*>(rho.data());
  double* __restrict__ O = reinterpret_cast<double*>(out.data());
  for (size_t q = 0; q < total; ++q) O[q] = R[q] + a * K[q];
}

void rk4_update(double dt6, const Eigen::MatrixXcd& k1, const Eigen::MatrixXcd& k2,
                const Eigen::MatrixXcd& k3, const Eigen::MatrixXcd& k4,
                Eigen::MatrixXcd& rho) {
  const size_t total = 2 * static_cast<size_t>(rho.size());
  const double* __restrict__ K1 = reinterpret_cast<const double*>(k1.data());
  const double* __restrict__ K2 = reinterpret_cast<const double*>(k2.data());
  const double* __restrict__ K3 = reinterpret_cast<const double*>(k3.data());
  const double* __restrict__ K4 = reinterpret_cast<const double*>(k4.data());
  double* __restrict__ R = reinterpret_cast<double*>(rho.data());
  for (size_t q = 0; q < total; ++q)
    R[q] += dt6 * (K1[q] + 2.0 * (K2[q] + K3[q]) + K4[q]);
}

struct Moments {
  Complex a, b;
  double n_a, n_b, nb2;
};

Moments measure(const Eigen::MatrixXcd& rho, int D) {
  const int N = D * D;
  Moments m{};
  for (int i = 0; i < N; ++i) {
    const int na = i / D, nb = i % D;
    const double pop = rho(i, i).real();
    m.n_a += na * pop;
    m.n_b += nb * pop;
    m.nb2 += double(nb) * nb * pop;
    // Tr(a rho): <n_a,n_b| a rho |n_a,n_b> = sqrt(n_a+1) rho(i+D, i)
    if (na < D - 1) m.a += std::sqrt(double(na + 1)) * rho(i + D, i);
    if (nb < D - 1) m.b += std::sqrt(double(nb + 1)) * rho(i + 1, i);
  }
  return m;
}

}  // namespace

DensityCheck validate_density(const DensityMatrix& dm, bool with_spectrum) {
  DensityCheck c{};
  c.herm_residual = (dm.rho - dm.rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_deviation = std::abs(dm.rho.trace().real() - 1.0) +
                      std::abs(dm.rho.trace().imag());
  if (with_spectrum) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (dm.rho + dm.rho.adjoint()), Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
  } else {
    c.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

DensityMatrix pulse_initial_state(const BatteryParams& p, const FockConfig& cfg) {
  validate_config(p, cfg);
  const int D = cfg.n_cut + 1;

  // Coherent amplitudes c_n = e^{-Omega^2/2} alpha^n / sqrt(n!), alpha = -i Omega.
  Eigen::VectorXcd c(D);
  const Complex alpha(0.0, -p.Omega);
  c[0] = std::exp(-0.5 * p.Omega * p.Omega);
  for (int n = 1; n < D; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));

  const double deficit = 1.0 - c.squaredNorm();
  if (deficit > 1e-10) {
    std::ostringstream msg;
    msg << "pulse_initial_state: n_cut=" << cfg.n_cut
        << " too small for Omega=" << p.Omega << " (norm deficit " << deficit
        << " > 1e-10); recommended cutoff is "
        << FockConfig::recommended_cutoff(p.Omega);
    throw std::invalid_argument(msg.str());
  }

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(D * D);
  for (int na = 0; na < D; ++na) psi[na * D] = c[na];  // holder in vacuum

  DensityMatrix dm{psi * psi.adjoint(), cfg.n_cut};
  return dm;
}

LindbladResult evolve_lindblad(const DensityMatrix& rho0, const BatteryParams& p,
                               const FockConfig& cfg, const RhoObserver& observer) {
  validate_config(p, cfg);
  if (rho0.n_cut != cfg.n_cut || rho0.dim() != (cfg.n_cut + 1) * (cfg.n_cut + 1))
    throw std::invalid_argument("evolve_lindblad: state/config dimension mismatch");

  const Generator gen(p, cfg.n_cut);
  const int N = gen.N;
  const double dt = cfg.dt;
  const long n_steps = static_cast<long>(std::llround(cfg.t_max / dt));
  const int stride = std::max(1, cfg.output_stride);

  DensityMatrix dm = rho0;
  Eigen::MatrixXcd k1(N, N), k2(N, N), k3(N, N), k4(N, N), stage(N, N);

  LindbladResult result;
  result.trace.reserve(static_cast<size_t>(n_steps / stride) + 2);

  auto record = [&](double t) {
    const DensityCheck chk = validate_density(dm, cfg.check_positivity);
    if (chk.trace_deviation > 1e-6 || chk.herm_residual > 1e-9) {
      std::ostringstream msg;
      msg << "evolve_lindblad: instability at t=" << t << " (trace dev "
          << chk.trace_deviation << ", herm " << chk.herm_residual
          << "); reduce dt";
      throw std::runtime_error(msg.str());
    }
    if (cfg.check_positivity && chk.min_eigenvalue < -1e-8) {
      std::ostringstream msg;
      msg << "evolve_lindblad: positivity violated at t=" << t
          << " (min eigenvalue " << chk.min_eigenvalue << ")";
      throw std::runtime_error(msg.str());
    }
    const Moments m = measure(dm.rho, gen.D);
    result.trace.push_back(
        {t, m.a, m.b, m.n_a, m.n_b, m.nb2 - m.n_b * m.n_b});
    if (observer) observer(t, dm);
  };

  record(0.0);
  for (long i = 0; i < n_steps; ++i) {
    gen.rhs(dm.rho, k1);
    stage_axpy(0.5 * dt, k1, dm.rho, stage);
    gen.rhs(stage, k2);
    stage_axpy(0.5 * dt, k2, dm.rho, stage);
    gen.rhs(stage, k3);
    stage_axpy(dt, k3, dm.rho, stage);
    gen.rhs(stage, k4);
    rk4_update(dt / 6.0, k1, k2, k3, k4, dm.rho);
    if ((i + 1) % stride == 0 || i + 1 == n_steps) record((i + 1) * dt);
  }

  result.rho_final = std::move(dm);
  return result;
}

Eigen::MatrixXcd reduced_holder_state(const DensityMatrix& dm) {
  const int D = dm.mode_dim();
  Eigen::MatrixXcd rb = Eigen::MatrixXcd::Zero(D, D);
  for (int na = 0; na < D; ++na)
    rb += dm.rho.block(na * D, na * D, D, D);
  return rb;
}

double ergotropy_numeric(const DensityMatrix& dm, const BatteryParams& p) {
  const int D = dm.mode_dim();
  const Eigen::MatrixXcd rb = reduced_holder_state(dm);

  double mean_energy = 0.0;
  for (int n = 0; n < D; ++n) mean_energy += p.omega_b * n * rb(n, n).real();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rb + rb.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  Eigen::VectorXd lam = es.eigenvalues();  // ascending
  double passive_energy = 0.0;
  for (int k = 0; k < D; ++k)
    passive_energy += lam[D - 1 - k] * p.omega_b * k;  // descending pops vs ascending E

  return std::max(0.0, mean_energy - passive_energy);
}

double factorization_residual(const MomentTrace& trace) {
  double worst = 0.0;
  for (const MomentSample& s : trace)
    worst = std::max(worst, std::abs(s.n_b - std::norm(s.b)));
  return worst;
}

}  // namespace qbat
