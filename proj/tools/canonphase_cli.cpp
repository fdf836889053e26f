// canonphase: batch front-end for the single-shot canonical phase simulator.
//
// Exit codes: 0 success, 2 validation error, 3 numeric or size-limit error,
// 4 I/O error.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "canonphase/error.hpp"
#include "canonphase/experiment.hpp"
#include "canonphase/io.hpp"
#include "canonphase/multiport.hpp"
#include "canonphase/selftest.hpp"

namespace cp = canonphase;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct OutputOptions {
  std::string out;
  bool check = false;
};

// Either validates `text` with `validator` (--check), writes it to `path`, or
// prints it when no path is set.
void emit(const std::string& text, const std::optional<std::string>& path, bool check,
          const std::function<void(std::string_view)>& validator, const char* what) {
  validator(text);
  if (check) {
    std::cout << "ok: " << what << " is valid" << (path ? " (not written to " + *path + ")" : "")
              << "\n";
    return;
  }
  if (path) {
    cp::write_file_atomic(*path, text);
    std::cout << "wrote " << what << " to " << *path << "\n";
  } else {
    std::cout << text;
  }
}

std::optional<std::string> pick(const std::string& flag, const std::optional<std::string>& config) {
  if (!flag.empty()) return flag;
  return config;
}

int cmd_matrix(int dim, const OutputOptions& o) {
  const auto text = cp::matrix_csv(cp::dft_matrix(dim));
  emit(text, pick(o.out, std::nullopt), o.check, cp::validate_matrix_csv, "matrix");
  return 0;
}

int cmd_decompose(std::optional<int> dim, const std::string& netlist_in, const OutputOptions& o) {
  cp::InterferometerNetlist netlist;
  if (!netlist_in.empty()) {
    netlist = cp::decompose(cp::recompose(cp::parse_netlist(cp::read_file(netlist_in))));
  } else if (dim) {
    netlist = cp::decompose(cp::phase_pointer_network(*dim));
  } else {
    throw cp::Error(cp::ErrorKind::InvalidConfig, "decompose needs --dim or --netlist-in");
  }
  emit(cp::to_text(netlist), pick(o.out, std::nullopt), o.check, cp::validate_netlist_text,
       "netlist");
  return 0;
}

int cmd_simulate(const std::string& config_path, const OutputOptions& o) {
  const cp::ExperimentConfig config = cp::load_config(config_path);
  const cp::SimulationResult result = cp::run_simulation(config);
  emit(cp::distribution_csv(result.distribution, result.max_abs_diff),
       pick(o.out, config.distribution_out), o.check, cp::validate_distribution_csv,
       "distribution");
  if (!config.convergence_n.empty()) {
    const auto rows = cp::run_convergence(config);
    emit(cp::convergence_csv(rows), config.convergence_out, o.check, cp::validate_convergence_csv,
         "convergence report");
  }
  return 0;
}

int cmd_sample(const std::string& config_path, std::optional<std::uint64_t> shots,
               std::optional<std::uint64_t> seed, const OutputOptions& o) {
  cp::ExperimentConfig config = cp::load_config(config_path);
  if (shots) config.shots = *shots;
  if (seed) config.seed = *seed;
  const cp::Histogram hist = cp::run_sampling(config);
  emit(cp::histogram_csv(hist), pick(o.out, config.histogram_out), o.check,
       cp::validate_histogram_csv, "histogram");
  return 0;
}

int cmd_selftest(const std::string& fault) {
  cp::SelftestOptions opts;
  if (fault == "kappa2-sign")
    opts.flip_kappa2_sign = true;
  else if (!fault.empty())
    throw cp::Error(cp::ErrorKind::InvalidConfig, "unknown fault '" + fault + "'");
  bool all_ok = true;
  std::printf("%-12s %8s %8s %12s %12s  %s\n", "suite", "passed", "total", "worst", "tolerance",
              "status");
  for (const auto& r : cp::run_selftest(opts)) {
    std::printf("%-12s %8d %8d %12.3e %12.3e  %s\n", r.name.c_str(), r.passed, r.total, r.worst,
                r.tolerance, r.ok() ? "PASS" : "FAIL");
    all_ok = all_ok && r.ok();
  }
  std::printf("%s\n", all_ok ? "selftest passed" : "selftest FAILED");
  return all_ok ? 0 : 1;
}

int exit_code_for(const cp::Error& e) {
  switch (cp::classify_error(e.kind())) {
    case cp::ErrorClass::Validation: return kExitValidation;
    case cp::ErrorClass::Numeric: return kExitNumeric;
    case cp::ErrorClass::Io: return kExitIo;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-shot canonical phase measurement simulator"};
  app.require_subcommand(1);

  auto add_output = [](CLI::App* sub, OutputOptions& o) {
    sub->add_option("--out", o.out, "Output path (default: stdout or the config's output path)");
    sub->add_flag("--check", o.check, "Validate the output format without writing it");
  };

  int dim = 0;
  OutputOptions matrix_out;
  auto* matrix = app.add_subcommand("matrix", "Emit the DFT matrix as CSV of re,im pairs");
  matrix->add_option("--dim", dim, "Matrix dimension N+1")->required();
  add_output(matrix, matrix_out);

  std::optional<int> decompose_dim;
  std::string netlist_in;
  OutputOptions decompose_out;
  auto* decompose = app.add_subcommand(
      "decompose", "Emit a triangular beam-splitter netlist for the phase multiport or a netlist");
  auto* dim_opt = decompose->add_option("--dim", decompose_dim, "Dimension of the phase multiport");
  decompose->add_option("--netlist-in", netlist_in, "Re-decompose an existing netlist")
      ->excludes(dim_opt);
  add_output(decompose, decompose_out);

  std::string simulate_config;
  OutputOptions simulate_out;
  auto* simulate = app.add_subcommand("simulate", "Exact retained phase distribution");
  simulate->add_option("--config", simulate_config, "Experiment config (JSON)")->required();
  add_output(simulate, simulate_out);

  std::string sample_config;
  std::optional<std::uint64_t> shots, seed;
  OutputOptions sample_out;
  auto* sample = app.add_subcommand("sample", "Monte Carlo histogram of pointer events");
  sample->add_option("--config", sample_config, "Experiment config (JSON)")->required();
  sample->add_option("--shots", shots, "Number of shots (overrides config)");
  sample->add_option("--seed", seed, "RNG seed (overrides config)");
  add_output(sample, sample_out);

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle sweeps");
  selftest->add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*matrix) return cmd_matrix(dim, matrix_out);
    if (*decompose) return cmd_decompose(decompose_dim, netlist_in, decompose_out);
    if (*simulate) return cmd_simulate(simulate_config, simulate_out);
    if (*sample) return cmd_sample(sample_config, shots, seed, sample_out);
    if (*selftest) return cmd_selftest(fault);
  } catch (const cp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
