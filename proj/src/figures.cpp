#include "qbat/figures.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qbat {

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (!(spec.start < spec.stop))
    throw std::invalid_argument("sweep: start must be < stop");
  if (spec.points < 2) throw std::invalid_argument("sweep: points must be >= 2");
  if (spec.scale == SweepSpec::Scale::Log && !(spec.start > 0.0))
    throw std::invalid_argument("sweep: log scale requires start > 0");

  std::vector<double> grid(spec.points);
  const int n = spec.points - 1;
  if (spec.scale == SweepSpec::Scale::Linear) {
    for (int i = 0; i <= n; ++i)
      grid[i] = spec.start + (spec.stop - spec.start) * i / n;
  } else {
    const double la = std::log(spec.start), lb = std::log(spec.stop);
    for (int i = 0; i <= n; ++i) grid[i] = std::exp(la + (lb - la) * i / n);
    grid.front() = spec.start;
  }
  grid.back() = spec.stop;
  return grid;
}

Normalization figure_normalization(const BatteryParams& p) {
  const double rate = p.gamma > 0.0 ? p.gamma : p.g;
  const double e = p.omega_b * p.Omega * p.Omega;
  return {rate, e, e * rate};
}

std::string format_sci(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

namespace {

double norm_or_raw(double value, double factor) {
  return factor > 0.0 ? value / factor : value;
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_sci(values[i]);
  }
  out << '\n';
}

}  // namespace

void write_simulation_csv(std::ostream& out, const BatteryParams& p,
                          const SimulateOptions& opt) {
  const Normalization nf = figure_normalization(p);
  const double time_unit = (opt.raw || nf.time <= 0.0) ? 1.0 : nf.time;

  out << (opt.raw ? "t,E,P_inst,P_avg\n" : "t_gamma,E_norm,Pinst_norm,Pavg_norm\n");
  SweepSpec grid_spec{SweepSpec::Axis::Time, 0.0, opt.t_max, opt.points,
                      SweepSpec::Scale::Linear};
  for (double tau : sweep_grid(grid_spec)) {
    const double t = tau / time_unit;  // grid is in normalized time units
    const EnergyRecord r = energy_record(p, t);
    if (opt.raw) {
      write_row(out, {t, r.E, r.P_inst, r.P_avg});
    } else {
      write_row(out, {tau, norm_or_raw(r.E, nf.energy),
                      norm_or_raw(r.P_inst, nf.power),
                      norm_or_raw(r.P_avg, nf.power)});
    }
  }
}

nlohmann::ordered_json optima_json(const BatteryParams& p, bool raw) {
  const OptimaResult o = compute_optima(p);
  const Normalization nf = figure_normalization(p);
  const double tn = raw ? 1.0 : nf.time;
  auto en = [&](double v) { return raw ? v : norm_or_raw(v, nf.energy); };
  auto pn = [&](double v) { return raw ? v : norm_or_raw(v, nf.power); };

  nlohmann::ordered_json j;
  j["params"] = {{"omega_b", p.omega_b},
                 {"g", p.g},
                 {"gamma", p.gamma},
                 {"omega", p.Omega}};
  j["units"] = raw ? "raw"
               : p.gamma > 0.0
                   ? "times*gamma, energies/(omega_b*Omega^2), powers/(omega_b*Omega^2*gamma)"
                   : "times*g, energies/(omega_b*Omega^2), powers/(omega_b*Omega^2*g)";
  j["t_E"] = {{"value", o.t_E * tn}, {"method", to_string(o.method_E)}};
  j["E_at_tE"] = {{"value", en(o.E_at_tE)}, {"method", to_string(o.method_E)}};
  j["t_Pinst"] = {{"value", o.t_Pinst * tn}, {"method", to_string(o.method_Pinst)}};
  j["Pinst_max"] = {{"value", pn(o.Pinst_max)}, {"method", to_string(o.method_Pinst)}};
  j["t_Pavg"] = {{"value", o.t_Pavg * tn}, {"method", to_string(o.method_Pavg)}};
  j["Pavg_max"] = {{"value", pn(o.Pavg_max)}, {"method", to_string(o.method_Pavg)}};
  if (p.gamma > 0.0) {
    const AsymptoticsTable a = asymptotics(p);
    j["asymptotics"] = {
        {"valid_weak_coupling",
         {{"t_E", a.t_E_weak * tn},
          {"E_at_tE", en(a.E_opt_weak)},
          {"t_Pinst", a.t_Pinst_weak * tn},
          {"Pinst_max", pn(a.Pinst_opt_weak)},
          {"Pavg_max", pn(a.Pavg_opt_weak)}}},
        {"valid_strong_coupling",
         {{"t_E", a.t_E_strong * tn},
          {"E_at_tE", en(a.E_opt_strong)},
          {"t_Pinst", a.t_Pinst_strong * tn},
          {"Pinst_max", pn(a.Pinst_opt_strong)},
          {"Pavg_max", pn(a.Pavg_opt_strong)}}}};
  } else {
    j["asymptotics"] = nullptr;  // weak/strong split is around g_EP = gamma/4
  }
  return j;
}

namespace {

// Couplings for the (a)-panels: below, at and twice above the EP of g = 0.25.
const double panel_couplings[4] = {0.1, 0.25, 0.5, 1.0};
const char* panel_labels[4] = {"g0.10", "g0.25", "g0.50", "g1.00"};

BatteryParams panel_params(double g_over_gamma) {
  return BatteryParams(1.0, g_over_gamma, 1.0, 1.0);  // normalized curves
}

void write_time_panel(std::ostream& out, char quantity) {
  const char* prefix = quantity == 'E' ? "E" : quantity == 'P' ? "Pinst" : "Pavg";
  out << "t_gamma";
  for (const char* label : panel_labels) out << ',' << prefix << '_' << label;
  out << '\n';
  SweepSpec spec{SweepSpec::Axis::Time, 0.0, 10.0, 1001, SweepSpec::Scale::Linear};
  for (double t : sweep_grid(spec)) {
    std::vector<double> row{t};
    for (double g : panel_couplings) {
      const BatteryParams p = panel_params(g);
      switch (quantity) {
        case 'E': row.push_back(stored_energy(p, t)); break;
        case 'P': row.push_back(instantaneous_power(p, t)); break;
        default: row.push_back(t > 0.0 ? stored_energy(p, t) / t : 0.0); break;
      }
    }
    write_row(out, row);
  }
}

void write_coupling_panel(std::ostream& out, const std::string& id) {
  struct Columns {
    const char* exact;
    const char* weak;
    const char* strong;
  };
  Columns cols{};
  if (id == "fig2b") cols = {"tE_gamma", "tE_gamma_weak_asym", "tE_gamma_strong_asym"};
  else if (id == "fig2c") cols = {"E_opt_norm", "E_opt_norm_weak_asym", "E_opt_norm_strong_asym"};
  else if (id == "fig3b") cols = {"tPinst_gamma", "tPinst_gamma_weak_asym", "tPinst_gamma_strong_asym"};
  else if (id == "fig3c") cols = {"Pinst_opt_norm", "Pinst_opt_norm_weak_asym", "Pinst_opt_norm_strong_asym"};
  else if (id == "fig4b") cols = {"tPavg_gamma", "tPavg_gamma_weak_asym", "tPavg_gamma_strong_asym"};
  else cols = {"Pavg_opt_norm", "Pavg_opt_norm_weak_asym", "Pavg_opt_norm_strong_asym"};

  out << "g_over_gamma," << cols.exact << ',' << cols.weak << ',' << cols.strong << '\n';
  SweepSpec spec{SweepSpec::Axis::GOverGamma, 1e-2, 1e2, 201, SweepSpec::Scale::Log};
  const TranscendentalConstants& tc = transcendental_constants();
  for (double g : sweep_grid(spec)) {
    const BatteryParams p = panel_params(g);
    const AsymptoticsTable a = asymptotics(p);
    double exact = 0.0, weak = 0.0, strong = 0.0;
    if (id == "fig2b") {
      exact = optimal_energy_time(p);
      weak = a.t_E_weak;
      strong = a.t_E_strong;
    } else if (id == "fig2c") {
      exact = optimal_energy_value(p);
      weak = a.E_opt_weak;
      strong = a.E_opt_strong;
    } else if (id == "fig3b") {
      exact = optimal_inst_power_time(p);
      weak = a.t_Pinst_weak;
      strong = a.t_Pinst_strong;
    } else if (id == "fig3c") {
      exact = optimal_inst_power_value(p);
      weak = a.Pinst_opt_weak;
      strong = a.Pinst_opt_strong;
    } else if (id == "fig4b") {
      exact = optimal_avg_power_time(p);
      weak = tc.zeta;          // t_P -> zeta/gamma for g << gamma/4
      strong = tc.Z / p.g;     // t_P -> Z/g for g >> gamma/4
    } else {
      exact = optimal_avg_power_value(p);
      weak = a.Pavg_opt_weak;
      strong = a.Pavg_opt_strong;
    }
    write_row(out, {g, exact, weak, strong});
  }
}

}  // namespace

bool is_known_figure(const std::string& id) {
  static const char* ids[] = {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b",
                              "fig3c", "fig4a", "fig4b", "fig4c"};
  for (const char* k : ids)
    if (id == k) return true;
  return false;
}

void write_figure_csv(std::ostream& out, const std::string& id) {
  if (!is_known_figure(id))
    throw std::invalid_argument("unknown figure id: " + id +
                                " (expected fig2a..fig4c)");
  if (id == "fig2a") write_time_panel(out, 'E');
  else if (id == "fig3a") write_time_panel(out, 'P');
  else if (id == "fig4a") write_time_panel(out, 'A');
  else write_coupling_panel(out, id);
}

}  // namespace qbat
