#include "canonphase/experiment.hpp"

#include <cmath>
#include <filesystem>

#include "canonphase/error.hpp"
#include "canonphase/io.hpp"
#include "json.hpp"

namespace canonphase {

namespace {

using nlohmann::json;

Error config_error(const std::string& what) { return Error(ErrorKind::InvalidConfig, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw config_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw config_error("complex numbers are written as [re, im]");
}

std::vector<Complex> parse_coefficients(const json& j) {
  if (!j.is_array() || j.empty()) throw config_error("coefficients must be a non-empty array");
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(parse_complex(e));
  return c;
}

int parse_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw config_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::uint64_t parse_u64(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw config_error(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string type_of(const json& j) {
  const auto& t = require(j, "type");
  if (!t.is_string()) throw config_error("'type' must be a string");
  return t.get<std::string>();
}

PureSignal parse_pure_signal(const json& j) {
  const std::string type = type_of(j);
  if (type == "number") {
    NumberSignal s;
    s.n = parse_int(require(j, "n"), "n");
    s.cutoff = j.contains("cutoff") ? parse_int(j.at("cutoff"), "cutoff") : s.n;
    return s;
  }
  if (type == "coherent") {
    CoherentSignal s;
    s.alpha = parse_complex(require(j, "alpha"));
    s.cutoff = parse_int(require(j, "cutoff"), "cutoff");
    return s;
  }
  if (type == "custom") return CustomSignal{parse_coefficients(require(j, "coefficients"))};
  if (type == "theta") return ThetaSignal{parse_int(require(j, "m"), "m")};
  throw config_error("unknown signal type '" + type + "'");
}

SignalSpec parse_signal(const json& j) {
  if (type_of(j) != "ensemble") return SignalSpec{{{1.0, parse_pure_signal(j)}}};
  const auto& comps = require(j, "components");
  if (!comps.is_array() || comps.empty()) throw config_error("ensemble needs components");
  SignalSpec s;
  for (const auto& c : comps) {
    const auto& w = require(c, "weight");
    if (!w.is_number()) throw config_error("ensemble weight must be a number");
    s.components.emplace_back(w.get<double>(), parse_pure_signal(require(c, "state")));
  }
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (modes < 2) throw config_error("modes must be at least 2");
  if (!(eta > 0.0 && eta <= 1.0)) throw config_error("eta must lie in (0, 1]");
  if (signal.components.empty()) throw config_error("signal has no components");
  double w = 0.0;
  for (const auto& [weight, spec] : signal.components) {
    if (!(weight >= 0.0)) throw config_error("ensemble weights must be non-negative");
    w += weight;
  }
  if (std::abs(w - 1.0) > 1e-9) throw config_error("ensemble weights must sum to 1");
  for (int n : convergence_n)
    if (n < 0) throw config_error("convergence N values must be non-negative");
}

ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");

  // Relative paths in a config file are taken relative to that file.
  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path = p;
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    return path.string();
  };

  ExperimentConfig c;
  try {
    if (j.contains("modes")) c.modes = parse_int(j.at("modes"), "modes");
    if (j.contains("signal")) c.signal = parse_signal(j.at("signal"));
    if (j.contains("reference")) {
      const auto& r = j.at("reference");
      const std::string type = type_of(r);
      if (type == "custom")
        c.reference = parse_coefficients(require(r, "coefficients"));
      else if (type != "binomial")
        throw config_error("unknown reference type '" + type + "'");
    }
    if (j.contains("network")) {
      const auto& n = j.at("network");
      const std::string type = type_of(n);
      if (type == "netlist") {
        const auto& p = require(n, "path");
        if (!p.is_string()) throw config_error("netlist path must be a string");
        c.netlist_path = resolve(p.get<std::string>());
      } else if (type != "dft") {
        throw config_error("unknown network type '" + type + "'");
      }
    }
    if (j.contains("eta")) {
      if (!j.at("eta").is_number()) throw config_error("eta must be a number");
      c.eta = j.at("eta").get<double>();
    }
    if (j.contains("shots")) c.shots = parse_u64(j.at("shots"), "shots");
    if (j.contains("seed")) c.seed = parse_u64(j.at("seed"), "seed");
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (!o.is_object()) throw config_error("output must be an object");
      auto path_of = [&o, &resolve](const char* key) -> std::optional<std::string> {
        if (!o.contains(key)) return std::nullopt;
        if (!o.at(key).is_string()) throw config_error(std::string("output.") + key + " must be a string");
        return resolve(o.at(key).get<std::string>());
      };
      c.distribution_out = path_of("distribution");
      c.histogram_out = path_of("histogram");
      c.convergence_out = path_of("convergence");
    }
    if (j.contains("convergence")) {
      const auto& v = j.at("convergence");
      if (!v.is_array()) throw config_error("convergence must be an array of N values");
      for (const auto& n : v) c.convergence_n.push_back(parse_int(n, "convergence N"));
    }
  } catch (const json::exception& e) {
    throw config_error(e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  return parse_config(text, std::filesystem::path(path).parent_path().string());
}

SingleModeState build_signal(const PureSignal& spec, const PhaseGrid& grid) {
  return std::visit(
      [&grid](const auto& s) -> SingleModeState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NumberSignal>) {
          return number_state(s.n, s.cutoff);
        } else if constexpr (std::is_same_v<T, CoherentSignal>) {
          return coherent_state(s.alpha, s.cutoff);
        } else if constexpr (std::is_same_v<T, CustomSignal>) {
          return custom_state(s.coefficients);
        } else {
          return theta_state(grid, s.m);
        }
      },
      spec);
}

SingleModeState build_reference(const ExperimentConfig& config) {
  if (config.reference) return custom_state(*config.reference);
  return binomial_reference(config.modes - 1);
}

UnitaryMatrix build_network(const ExperimentConfig& config) {
  if (!config.netlist_path) return phase_pointer_network(config.modes);
  const UnitaryMatrix u = recompose(parse_netlist(read_file(*config.netlist_path)));
  if (u.dim() != config.modes)
    throw Error(ErrorKind::DimensionMismatch, "netlist dimension " + std::to_string(u.dim()) +
                                                  " differs from modes " + std::to_string(config.modes));
  return u;
}

Ensemble build_input(const ExperimentConfig& config) {
  const PhaseGrid grid = config.grid();
  const SingleModeState ref = build_reference(config);
  Ensemble e;
  for (const auto& [w, spec] : config.signal.components)
    e.push_back({w, assemble_input(build_signal(spec, grid), ref, grid)});
  return e;
}

SimulationResult run_simulation(const ExperimentConfig& config) {
  config.validate();
  const UnitaryMatrix u = build_network(config);
  const Ensemble input = build_input(config);
  SimulationResult r;
  if (config.eta == 1.0) {
    r.distribution = retained_distribution(u, input);
  } else {
    const auto detected = apply_detector_efficiency(outcome_distribution(u, input), config.eta);
    r.distribution = reduce_to_retained(detected, config.grid());
  }
  if (config.signal.is_pure() && !config.reference) {
    const auto expected =
        projection_distribution(build_signal(config.signal.components[0].second, config.grid()), config.grid());
    double d = 0.0;
    for (std::size_t m = 0; m < expected.probabilities.size(); ++m)
      d = std::max(d, std::abs(expected.probabilities[m] - r.distribution.probabilities[m]));
    r.max_abs_diff = d;
  }
  return r;
}

Histogram run_sampling(const ExperimentConfig& config) {
  config.validate();
  if (config.shots == 0) throw config_error("shots must be positive for sample");
  const UnitaryMatrix u = build_network(config);
  const Ensemble input = build_input(config);
  if (config.eta == 1.0)
    return sample_with_discards(retained_distribution(u, input), config.shots, config.seed);
  const auto detected = apply_detector_efficiency(outcome_distribution(u, input), config.eta);
  return sample(detected, config.shots, config.seed);
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config) {
  if (!config.signal.is_pure()) throw config_error("convergence report needs a pure signal");
  const SingleModeState psi = build_signal(config.signal.components[0].second, config.grid());
  return convergence_report(psi, config.convergence_n);
}

}  // namespace canonphase
