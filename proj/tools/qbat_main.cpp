// Command-line front end: single-point simulation curves, optimum
// computation, figure-data regeneration and the verification report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qbat/figures.hpp"
#include "qbat/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify_failed = 2;

struct ParamFlags {
  double omega_b = 5.0;
  double g = 0.0;
  double gamma = 1.0;
  double omega = 1.0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool g_required) {
  cmd->add_option("--omega-b", f.omega_b, "Oscillator level spacing (rate units)")
      ->check(CLI::PositiveNumber);
  auto* gopt = cmd->add_option("--g", f.g, "Charger-holder coupling rate")
                   ->check(CLI::NonNegativeNumber);
  if (g_required) gopt->required();
  cmd->add_option("--gamma", f.gamma, "Charger dissipation rate")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--omega", f.omega, "Pulse strength Omega")
      ->check(CLI::NonNegativeNumber);
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qbat: pulsed two-oscillator quantum battery - closed-form energetics,\n"
      "optimal charging times, figure data and independent numerical\n"
      "verification"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // simulate
  ParamFlags sim_p;
  double t_max = 10.0;
  int points = 1001;
  std::string scale = "linear";
  bool sim_raw = false;
  std::string sim_out;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Emit t, E, inst. power, avg. power as CSV (figure-axis units)");
  add_param_flags(sim, sim_p, true);
  sim->add_option("--t-max", t_max, "Grid end, in 1/gamma units (raw time with --raw)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--points", points, "Grid points")->check(CLI::Range(2, 10000000));
  sim->add_option("--scale", scale, "Grid scale")
      ->check(CLI::IsMember({"linear"}));
  sim->add_flag("--raw", sim_raw, "Raw units instead of figure-axis normalization");
  sim->add_option("--out", sim_out, "Write to file instead of stdout");

  // optima
  ParamFlags opt_p;
  bool opt_raw = false;
  std::string opt_out;
  CLI::App* opt = app.add_subcommand(
      "optima", "Optimal charging times/values plus asymptotics as JSON");
  add_param_flags(opt, opt_p, true);
  opt->add_flag("--raw", opt_raw, "Raw units instead of figure-axis normalization");
  opt->add_option("--out", opt_out, "Write to file instead of stdout");

  // figure
  std::string figure_id;
  std::string fig_out;
  CLI::App* fig = app.add_subcommand(
      "figure", "Regenerate the data behind one figure panel as <id>.csv");
  fig->add_option("--figure", figure_id, "Panel id: fig2a..fig4c")->required();
  fig->add_option("--out", fig_out, "Output directory (default: current)");

  // verify
  std::string mode = "quick";
  std::string ver_out;
  CLI::App* ver = app.add_subcommand(
      "verify", "Cross-check closed forms against the numerical oracles");
  ver->add_option("--mode", mode, "quick: analytic + ODE oracle; full: adds Lindblad")
      ->check(CLI::IsMember({"quick", "full"}));
  ver->add_option("--out", ver_out, "Write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*sim) {
      qbat::BatteryParams p(sim_p.omega_b, sim_p.g, sim_p.gamma, sim_p.omega);
      std::ofstream file;
      std::ostream& out = open_sink(sim_out, file);
      qbat::write_simulation_csv(out, p, {t_max, points, sim_raw});
    } else if (*opt) {
      if (opt_p.g <= 0.0) {
        std::cerr << "optima: --g must be > 0 (no optimum exists at g = 0)\n";
        return exit_usage;
      }
      qbat::BatteryParams p(opt_p.omega_b, opt_p.g, opt_p.gamma, opt_p.omega);
      std::ofstream file;
      std::ostream& out = open_sink(opt_out, file);
      out << qbat::optima_json(p, opt_raw).dump(2) << '\n';
    } else if (*fig) {
      if (!qbat::is_known_figure(figure_id)) {
        std::cerr << "figure: unknown id '" << figure_id
                  << "' (expected fig2a..fig4c)\n";
        return exit_usage;
      }
      namespace fs = std::filesystem;
      const fs::path dir = fig_out.empty() ? fs::path(".") : fs::path(fig_out);
      fs::create_directories(dir);
      const fs::path path = dir / (figure_id + ".csv");
      std::ofstream file(path);
      if (!file) throw std::runtime_error("cannot open " + path.string());
      qbat::write_figure_csv(file, figure_id);
      std::cerr << "wrote " << path.string() << '\n';
    } else if (*ver) {
      const qbat::VerifyMode m =
          mode == "full" ? qbat::VerifyMode::Full : qbat::VerifyMode::Quick;
      const qbat::VerifyReport report = qbat::run_verification(m);
      std::ofstream file;
      std::ostream& out = open_sink(ver_out, file);
      out << qbat::report_json(report, m).dump(2) << '\n';
      return report.overall ? exit_ok : exit_verify_failed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}
