#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "canonphase/measurement.hpp"
#include "canonphase/multiport.hpp"
#include "canonphase/oracle.hpp"
#include "canonphase/states.hpp"

namespace canonphase {

struct NumberSignal {
  int n = 0;
  int cutoff = 0;
};
struct CoherentSignal {
  Complex alpha;
  int cutoff = 0;
};
struct CustomSignal {
  std::vector<Complex> coefficients;
};
struct ThetaSignal {
  int m = 0;
};
using PureSignal = std::variant<NumberSignal, CoherentSignal, CustomSignal, ThetaSignal>;

/// A pure signal is a single component of weight 1.
struct SignalSpec {
  std::vector<std::pair<double, PureSignal>> components;
  bool is_pure() const { return components.size() == 1; }
};

/// Experiment description read from a JSON document:
///
///   {
///     "modes": 4,
///     "signal": {"type": "custom", "coefficients": [[0.7071, 0], [0.7071, 0]]},
///     "reference": {"type": "binomial"},
///     "network": {"type": "dft"},
///     "eta": 1.0, "shots": 100000, "seed": 7,
///     "output": {"distribution": "dist.csv", "histogram": "hist.csv"}
///   }
///
/// Signal types: number {n, cutoff}, coherent {alpha, cutoff}, custom
/// {coefficients}, theta {m}, ensemble {components: [{weight, state}]}.
/// Reference types: binomial, custom {coefficients}. Network types: dft,
/// netlist {path}. Complex numbers are [re, im] arrays.
struct ExperimentConfig {
  int modes = 8;
  SignalSpec signal{{{1.0, NumberSignal{}}}};
  /// Empty means the binomial reference.
  std::optional<std::vector<Complex>> reference;
  /// Empty means the DFT multiport.
  std::optional<std::string> netlist_path;
  double eta = 1.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> distribution_out;
  std::optional<std::string> histogram_out;
  std::optional<std::string> convergence_out;
  std::vector<int> convergence_n;

  PhaseGrid grid() const { return PhaseGrid(modes - 1); }
  /// Throws InvalidConfig when an invariant is violated.
  void validate() const;
};

/// Relative netlist and output paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir = "");
ExperimentConfig load_config(const std::string& path);

SingleModeState build_signal(const PureSignal& spec, const PhaseGrid& grid);
SingleModeState build_reference(const ExperimentConfig& config);
UnitaryMatrix build_network(const ExperimentConfig& config);
Ensemble build_input(const ExperimentConfig& config);

struct SimulationResult {
  RetainedDistribution distribution;
  /// Largest deviation from the phase-state projection; present for a pure
  /// signal with the binomial reference.
  std::optional<double> max_abs_diff;
};

SimulationResult run_simulation(const ExperimentConfig& config);
Histogram run_sampling(const ExperimentConfig& config);
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config);

}  // namespace canonphase
