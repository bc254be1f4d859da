#include "qbat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qbat/energetics.hpp"
#include "qbat/lindblad.hpp"
#include "qbat/moments_ode.hpp"
#include "qbat/optima.hpp"

namespace qbat {

namespace {

constexpr double pi = std::numbers::pi;

struct Suite {
  std::vector<CheckRecord> checks;

  void expect(int criterion, std::string name, double reference, double computed,
              double tolerance) {
    const bool pass = std::abs(computed - reference) <= tolerance;
    checks.push_back({criterion, std::move(name), reference, computed, tolerance, pass});
  }

  void expect_min(int criterion, std::string name, double minimum, double computed) {
    checks.push_back({criterion, std::move(name), minimum, computed, 0.0,
                      computed >= minimum});
  }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string g_tag(double g) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", g);
  return buf;
}

// Verification parameter points live in gamma = 1 units throughout.
BatteryParams at_coupling(double g, double omega_b = 1.0) {
  return BatteryParams(omega_b, g, 1.0, 1.0);
}

void criterion1_ep_energy(Suite& s) {
  const BatteryParams p = at_coupling(0.25);
  const double e2 = std::exp(-2.0);
  s.expect(1, "ep_optimal_energy_closed", e2, optimal_energy_value(p), 1e-12);
  const MaxResult m = numeric_optimum(p, TargetQuantity::StoredEnergy);
  s.expect(1, "ep_optimal_energy_vs_numeric_maximizer", e2, m.value, 1e-8);
}

void criterion2_ep_times(Suite& s) {
  const BatteryParams p = at_coupling(0.25);
  s.expect(2, "ep_t_E", 4.0, optimal_energy_time(p), 1e-12);
  s.expect(2, "ep_t_Pinst", 2.0 * (2.0 - std::sqrt(2.0)),
           optimal_inst_power_time(p), 1e-9);
  s.expect(2, "ep_t_Pavg", 2.0, optimal_avg_power_time(p), 1e-9);
}

void criterion3_constants(Suite& s) {
  const TranscendentalConstants tc = solve_transcendental_constants();
  s.expect(3, "zeta", 2.512862, tc.zeta, 1e-6);
  s.expect(3, "Z", 1.165561, tc.Z, 1e-6);
  s.expect(3, "tan(Z)-2Z", 0.0, std::tan(tc.Z) - 2.0 * tc.Z, 1e-10);
}

void criterion4_dissipationless(Suite& s) {
  const BatteryParams p(1.0, 1.0, 0.0, 1.0);
  s.expect(4, "lossless_t_E", 0.5 * pi, optimal_energy_time(p), 1e-10);
  s.expect(4, "lossless_E_max", 1.0, optimal_energy_value(p), 1e-10);
  s.expect(4, "lossless_E_max_numeric", 1.0,
           numeric_optimum(p, TargetQuantity::StoredEnergy).value, 1e-10);
  s.expect(4, "lossless_t_Pinst", 0.25 * pi, optimal_inst_power_time(p), 1e-10);
  s.expect(4, "lossless_Pinst_max", 1.0, optimal_inst_power_value(p), 1e-10);
  s.expect(4, "lossless_Pinst_max_numeric", 1.0,
           numeric_optimum(p, TargetQuantity::InstPower).value, 1e-10);
  const TranscendentalConstants& tc = transcendental_constants();
  s.expect(4, "lossless_t_Pavg_is_Z_over_g", tc.Z, optimal_avg_power_time(p), 1e-12);
  s.expect(4, "lossless_Pavg_peak_0.72", 0.72, optimal_avg_power_value(p), 0.005);
}

const std::vector<double>& oracle_couplings() {
  static const std::vector<double> gs = {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0};
  return gs;
}

void criterion5_moment_oracle(Suite& s) {
  for (double g : oracle_couplings()) {
    const BatteryParams p = at_coupling(g, 5.0);
    const MomentTrace trace = integrate_first_moments(p, 1e-4, 10.0, 10);
    double worst = 0.0;
    for (const MomentSample& m : trace) {
      const double e_rk4 = p.omega_b * std::norm(m.b);
      worst = std::max(worst, std::abs(stored_energy(p, m.t) - e_rk4));
    }
    const double scale = p.omega_b * p.Omega * p.Omega;
    s.expect(5, "rk4_moment_energy_dev_g" + g_tag(g), 0.0, worst,
             1e-7 * scale);
  }
}

// Shared by criteria 6 and 10.
struct LindbladDeviation {
  double energy_dev;
  double factorization;
  double poisson_dev;
  double ergotropy_dev;
};

LindbladDeviation lindblad_deviation(const BatteryParams& p, double dt,
                                     int stride, bool positivity,
                                     int n_cut = 12) {
  FockConfig cfg{n_cut, dt, 10.0, stride, positivity};
  LindbladDeviation out{};
  auto observer = [&](double t, const DensityMatrix& dm) {
    out.ergotropy_dev = std::max(
        out.ergotropy_dev,
        std::abs(ergotropy_numeric(dm, p) - stored_energy(p, t)));
  };
  const LindbladResult run =
      evolve_lindblad(pulse_initial_state(p, cfg), p, cfg, observer);
  for (const MomentSample& m : run.trace) {
    out.energy_dev = std::max(
        out.energy_dev, std::abs(m.n_b - stored_energy(p, m.t) / p.omega_b));
    out.poisson_dev = std::max(out.poisson_dev, std::abs(m.var_nb - m.n_b));
  }
  out.factorization = factorization_residual(run.trace);
  return out;
}

// Returns the coupling with the worst closed-form deviation (criterion 10's
// operating point).
double criterion6_lindblad_oracle(Suite& s) {
  double worst_g = oracle_couplings().front();
  double worst_dev = -1.0;
  for (double g : oracle_couplings()) {
    const BatteryParams p = at_coupling(g, 5.0);
    const LindbladDeviation dev = lindblad_deviation(p, 1e-4, 500, true);
    const double scale = p.omega_b * p.Omega * p.Omega;
    const std::string tag = "_g" + g_tag(g);
    s.expect(6, "lindblad_E_match" + tag, 0.0, dev.energy_dev, 1e-4);
    s.expect(6, "lindblad_factorization" + tag, 0.0, dev.factorization, 1e-6);
    s.expect(6, "lindblad_poisson_var" + tag, 0.0, dev.poisson_dev, 1e-5);
    s.expect(6, "lindblad_ergotropy" + tag, 0.0, dev.ergotropy_dev, 1e-4 * scale);
    if (dev.energy_dev > worst_dev) {
      worst_dev = dev.energy_dev;
      worst_g = g;
    }
  }
  return worst_g;
}

void criterion7_optimum_sweep(Suite& s) {
  const int n = 100;
  std::vector<double> gs(n);
  for (int i = 0; i < n; ++i)
    gs[i] = std::pow(10.0, -2.0 + 4.0 * i / (n - 1));

  double worst_time_rel = 0.0, worst_value_rel = 0.0;
  int monotonic_violations = 0;
  double prev[6] = {};
  for (int i = 0; i < n; ++i) {
    const BatteryParams p = at_coupling(gs[i]);
    const double tE = optimal_energy_time(p);
    const double tPi = optimal_inst_power_time(p);
    const double tPa = optimal_avg_power_time(p);
    const double vE = optimal_energy_value(p);
    const double vPi = optimal_inst_power_value(p);
    const double vPa = optimal_avg_power_value(p);

    const MaxResult mE = numeric_optimum(p, TargetQuantity::StoredEnergy);
    const MaxResult mPi = numeric_optimum(p, TargetQuantity::InstPower);
    const MaxResult mPa = numeric_optimum(p, TargetQuantity::AvgPower);
    worst_time_rel = std::max({worst_time_rel, rel_diff(mE.x, tE),
                               rel_diff(mPi.x, tPi), rel_diff(mPa.x, tPa)});
    worst_value_rel = std::max({worst_value_rel, rel_diff(mE.value, vE),
                                rel_diff(mPi.value, vPi), rel_diff(mPa.value, vPa)});

    // fig2b/c, fig3b/c, fig4b/c panels: times strictly decreasing, optima
    // strictly increasing in g.
    const double cur[6] = {tE, tPi, tPa, vE, vPi, vPa};
    if (i > 0) {
      for (int k = 0; k < 3; ++k)
        if (!(cur[k] < prev[k])) ++monotonic_violations;
      for (int k = 3; k < 6; ++k)
        if (!(cur[k] > prev[k])) ++monotonic_violations;
    }
    std::copy(cur, cur + 6, prev);
  }
  s.expect(7, "sweep_time_vs_maximizer_max_rel", 0.0, worst_time_rel, 1e-6);
  s.expect(7, "sweep_value_vs_maximizer_max_rel", 0.0, worst_value_rel, 1e-10);
  s.expect(7, "sweep_monotonicity_violations", 0.0,
           static_cast<double>(monotonic_violations), 0.0);
}

void criterion8_asymptotics(Suite& s) {
  {
    const BatteryParams p = at_coupling(1e-2);
    const AsymptoticsTable a = asymptotics(p);
    s.expect(8, "asym_weak_t_E", 0.0,
             rel_diff(a.t_E_weak, optimal_energy_time(p)), 0.05);
    s.expect(8, "asym_weak_E_opt", 0.0,
             rel_diff(a.E_opt_weak, optimal_energy_value(p)), 0.05);
    s.expect(8, "asym_weak_t_Pinst", 0.0,
             rel_diff(a.t_Pinst_weak, optimal_inst_power_time(p)), 0.05);
    s.expect(8, "asym_weak_Pinst_opt", 0.0,
             rel_diff(a.Pinst_opt_weak, optimal_inst_power_value(p)), 0.05);
    s.expect(8, "asym_weak_Pavg_opt", 0.0,
             rel_diff(a.Pavg_opt_weak, optimal_avg_power_value(p)), 0.05);
  }
  {
    const BatteryParams p = at_coupling(1e2);
    const AsymptoticsTable a = asymptotics(p);
    s.expect(8, "asym_strong_t_E", 0.0,
             rel_diff(a.t_E_strong, optimal_energy_time(p)), 0.05);
    s.expect(8, "asym_strong_E_opt", 0.0,
             rel_diff(a.E_opt_strong, optimal_energy_value(p)), 0.05);
    s.expect(8, "asym_strong_t_Pinst", 0.0,
             rel_diff(a.t_Pinst_strong, optimal_inst_power_time(p)), 0.05);
    s.expect(8, "asym_strong_Pinst_opt", 0.0,
             rel_diff(a.Pinst_opt_strong, optimal_inst_power_value(p)), 0.05);
    s.expect(8, "asym_strong_Pavg_opt", 0.0,
             rel_diff(a.Pavg_opt_strong, optimal_avg_power_value(p)), 0.05);
  }
  s.expect(8, "asym_t_Pinst_limit_ln4_at_g1e-3", 0.0,
           rel_diff(optimal_inst_power_time(at_coupling(1e-3)), std::log(4.0)),
           1e-3);
  const TranscendentalConstants& tc = transcendental_constants();
  const double pref_weak = std::sinh(0.25 * tc.zeta) * std::sinh(0.25 * tc.zeta) *
                           std::exp(-0.5 * tc.zeta) / tc.zeta;
  s.expect(8, "asym_prefactor_weak_0.051", 0.051, pref_weak, 5e-4);
  s.expect(8, "asym_prefactor_strong_0.72", 0.72,
           std::sin(tc.Z) * std::sin(tc.Z) / tc.Z, 5e-3);
}

void criterion9_ep_continuity(Suite& s) {
  const double eps = 1e-8;
  const BatteryParams p0 = at_coupling(0.25);
  const BatteryParams plus = at_coupling(0.25 + eps);
  const BatteryParams minus = at_coupling(0.25 - eps);

  double worst_time = 0.0;
  for (const BatteryParams* p : {&plus, &minus}) {
    worst_time = std::max(
        {worst_time, rel_diff(optimal_energy_time(*p), optimal_energy_time(p0)),
         rel_diff(optimal_inst_power_time(*p), optimal_inst_power_time(p0)),
         rel_diff(optimal_avg_power_time(*p), optimal_avg_power_time(p0))});
  }
  s.expect(9, "ep_continuity_optimal_times_max_rel", 0.0, worst_time, 1e-6);

  // Sample times avoid the lone zero of the EP-branch instantaneous power at
  // t = 4/gamma so relative comparison stays meaningful.
  double worst_val = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.0, 6.0}) {
    for (const BatteryParams* p : {&plus, &minus}) {
      worst_val = std::max(
          {worst_val, rel_diff(stored_energy(*p, t), stored_energy(p0, t)),
           rel_diff(instantaneous_power(*p, t), instantaneous_power(p0, t)),
           rel_diff(average_power(*p, t), average_power(p0, t))});
    }
  }
  s.expect(9, "ep_continuity_E_P_Pavg_max_rel", 0.0, worst_val, 1e-6);
}

void criterion10_convergence_order(Suite& s, double worst_g) {
  // Same parameter point as criterion 6's worst case; the cutoff is raised to
  // 16 so the n_cut = 12 truncation floor (~8e-10) does not mask the
  // dt-dependence being measured.
  const BatteryParams p = at_coupling(worst_g, 5.0);
  const double d1 = lindblad_deviation(p, 1e-3, 100, false, 16).energy_dev;
  const double d2 = lindblad_deviation(p, 5e-4, 200, false, 16).energy_dev;
  const double order = std::log2(d1 / d2);
  s.expect_min(10, "rk4_convergence_order_min", 3.8, order);
}

}  // namespace

std::vector<int> criteria_in_mode(VerifyMode mode) {
  if (mode == VerifyMode::Quick) return {1, 2, 3, 4, 5, 7, 8, 9};
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

VerifyReport run_verification(VerifyMode mode) {
  Suite s;
  criterion1_ep_energy(s);
  criterion2_ep_times(s);
  criterion3_constants(s);
  criterion4_dissipationless(s);
  criterion5_moment_oracle(s);
  double worst_g = 10.0;
  if (mode == VerifyMode::Full) worst_g = criterion6_lindblad_oracle(s);
  criterion7_optimum_sweep(s);
  criterion8_asymptotics(s);
  criterion9_ep_continuity(s);
  if (mode == VerifyMode::Full) criterion10_convergence_order(s, worst_g);

  std::sort(s.checks.begin(), s.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return a.criterion < b.criterion;
            });
  bool overall = true;
  for (const CheckRecord& c : s.checks) overall = overall && c.pass;
  return {std::move(s.checks), overall};
}

nlohmann::ordered_json report_json(const VerifyReport& report, VerifyMode mode) {
  nlohmann::ordered_json j;
  j["mode"] = mode == VerifyMode::Quick ? "quick" : "full";
  j["overall_pass"] = report.overall;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckRecord& c : report.checks) {
    checks.push_back({{"criterion", c.criterion},
                      {"name", c.name},
                      {"reference", c.reference},
                      {"computed", c.computed},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace qbat
