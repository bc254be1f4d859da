#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbat/energetics.hpp"
#include "qbat/optima.hpp"

namespace qbat {

/// One sweep axis of the CLI: either a time grid or a g/gamma grid.
struct SweepSpec {
  enum class Axis { GOverGamma, Time };
  enum class Scale { Linear, Log };
  Axis axis = Axis::Time;
  double start = 0.0;
  double stop = 10.0;
  int points = 1001;
  Scale scale = Scale::Linear;
};

/// Grid points for a sweep; validates start < stop, points >= 2 and
/// start > 0 for log scale (std::invalid_argument otherwise).
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Figure-axis normalization factors; zero factors mean "emit raw values",
/// which only happens when the raw values are identically zero (Omega = 0,
/// or gamma = 0 with g = 0).
struct Normalization {
  double time;    ///< multiply times by this (gamma, or g when gamma = 0)
  double energy;  ///< divide energies by this (omega_b Omega^2)
  double power;   ///< divide powers by this (omega_b Omega^2 gamma, or ...g)
};

Normalization figure_normalization(const BatteryParams& p);

/// Scientific notation with 12 decimal digits, the CLI wire format.
std::string format_sci(double v);

struct SimulateOptions {
  double t_max = 10.0;  ///< in 1/gamma units (raw time when raw = true)
  int points = 1001;
  bool raw = false;
};

/// CSV columns t*gamma, E/(omega_b Omega^2), P_inst and P_avg in units of
/// omega_b Omega^2 gamma (raw columns t, E, P_inst, P_avg with raw = true).
void write_simulation_csv(std::ostream& out, const BatteryParams& p,
                          const SimulateOptions& opt);

/// Optimal times/values plus the asymptotics table, each labeled with the
/// method that produced it.
nlohmann::ordered_json optima_json(const BatteryParams& p, bool raw);

/// True for the nine recognized panel ids fig2a..fig4c.
bool is_known_figure(const std::string& id);

/// Regenerates the data behind one figure panel. Throws std::invalid_argument
/// for an unknown id.
void write_figure_csv(std::ostream& out, const std::string& id);

}  // namespace qbat
