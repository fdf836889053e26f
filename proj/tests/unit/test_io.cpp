#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "canonphase/error.hpp"
#include "canonphase/experiment.hpp"
#include "canonphase/format.hpp"
#include "canonphase/io.hpp"

using namespace canonphase;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

constexpr const char* kPlusConfig = R"({
  "modes": 4,
  "signal": {"type": "custom", "coefficients": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
  "reference": {"type": "binomial"},
  "network": {"type": "dft"},
  "eta": 1.0, "shots": 1000, "seed": 3
})";

}  // namespace

TEST(Format, Reals) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_shortest(0.1), "0.1");
}

TEST(Csv, MatrixRoundTripsThroughValidator) {
  const auto text = matrix_csv(dft_matrix(3));
  EXPECT_NO_THROW(validate_matrix_csv(text));
  EXPECT_EQ(kind_of([] { validate_matrix_csv("1,0,0\n"); }), ErrorKind::InvalidFormat);
  EXPECT_EQ(kind_of([] { validate_matrix_csv("1,0,0,0\n0,0\n"); }), ErrorKind::InvalidFormat);
}

TEST(Csv, Distribution) {
  const auto r = run_simulation(parse_config(kPlusConfig));
  const auto text = distribution_csv(r.distribution, r.max_abs_diff);
  EXPECT_EQ(text.rfind("m,theta_m,probability\n", 0), 0u);
  EXPECT_NE(text.find("\nsuccess_probability,"), std::string::npos);
  EXPECT_NE(text.find("\nmax_abs_diff,"), std::string::npos);
  EXPECT_NO_THROW(validate_distribution_csv(text));
  EXPECT_EQ(kind_of([] { validate_distribution_csv("m,theta_m,probability\n0,0,1\n"); }),
            ErrorKind::InvalidFormat);
}

TEST(Csv, Histogram) {
  const auto h = run_sampling(parse_config(kPlusConfig));
  const auto text = histogram_csv(h);
  EXPECT_EQ(text.rfind("m,theta_m,count,frequency\n", 0), 0u);
  EXPECT_NE(text.find("\ndiscarded,"), std::string::npos);
  EXPECT_NE(text.find("\nseed,3\n"), std::string::npos);
  EXPECT_NO_THROW(validate_histogram_csv(text));
  EXPECT_EQ(kind_of([] { validate_histogram_csv("m,theta_m,count,frequency\n0,0,x,1\n"); }),
            ErrorKind::InvalidFormat);
}

TEST(Csv, Convergence) {
  const std::vector<ConvergenceRow> rows{{3, 1e-17}, {5, 0.0}};
  const auto text = convergence_csv(rows);
  EXPECT_EQ(text.rfind("N,sup_distance\n", 0), 0u);
  EXPECT_NO_THROW(validate_convergence_csv(text));
  EXPECT_EQ(kind_of([] { validate_convergence_csv("N,sup\n"); }), ErrorKind::InvalidFormat);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "canonphase_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_file_atomic(path, "abc\n");
  EXPECT_EQ(read_file(path), "abc\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_EQ(kind_of([&] { read_file((dir / "missing").string()); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([&] { write_file_atomic((dir / "no/such/dir/x").string(), "x"); }), ErrorKind::Io);
  std::filesystem::remove_all(dir);
}

TEST(Config, Defaults) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.modes, 8);
  EXPECT_EQ(c.eta, 1.0);
  EXPECT_FALSE(c.reference.has_value());
  EXPECT_FALSE(c.netlist_path.has_value());
}

TEST(Config, Parses) {
  const auto c = parse_config(kPlusConfig);
  EXPECT_EQ(c.modes, 4);
  EXPECT_EQ(c.shots, 1000u);
  EXPECT_EQ(c.seed, 3u);
  ASSERT_TRUE(c.signal.is_pure());
  EXPECT_TRUE(std::holds_alternative<CustomSignal>(c.signal.components[0].second));

  const auto e = parse_config(R"({"modes": 3, "signal": {"type": "ensemble", "components": [
      {"weight": 0.25, "state": {"type": "number", "n": 1}},
      {"weight": 0.75, "state": {"type": "coherent", "alpha": [0.5, 0.1], "cutoff": 20}}]},
      "reference": {"type": "custom", "coefficients": [[1,0],[0,1],[1,0]]},
      "network": {"type": "netlist", "path": "net.txt"}})",
                              "/base");
  EXPECT_EQ(e.signal.components.size(), 2u);
  ASSERT_TRUE(e.reference.has_value());
  EXPECT_EQ(e.reference->size(), 3u);
  EXPECT_EQ(*e.netlist_path, "/base/net.txt");
}

TEST(Config, Errors) {
  for (const char* text : {
           "not json",
           "[]",
           R"({"modes": 1})",
           R"({"eta": 0})",
           R"({"eta": 1.5})",
           R"({"shots": -1})",
           R"({"signal": {"type": "squeezed"}})",
           R"({"signal": {"type": "custom"}})",
           R"({"signal": {"type": "ensemble", "components": [{"weight": 0.5, "state": {"type": "number", "n": 0}}]}})",
           R"({"reference": {"type": "cat"}})",
           R"({"network": {"type": "fft"}})",
           R"({"signal": {"type": "custom", "coefficients": [[1]]}})",
       }) {
    EXPECT_EQ(kind_of([&] { parse_config(text); }), ErrorKind::InvalidConfig) << text;
  }
}

TEST(Experiment, SimulationExamples) {
  const auto r = run_simulation(parse_config(kPlusConfig));
  const std::vector<double> want{0.5, 0.25, 0.0, 0.25};
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(r.distribution.probabilities[m], want[m], 1e-12);
  ASSERT_TRUE(r.max_abs_diff.has_value());
  EXPECT_LT(*r.max_abs_diff, 1e-10);

  const auto vac = run_simulation(parse_config(R"({"modes": 5, "signal": {"type": "number", "n": 0}})"));
  for (double p : vac.distribution.probabilities) EXPECT_NEAR(p, 0.2, 1e-12);

  const auto th = run_simulation(parse_config(R"({"modes": 5, "signal": {"type": "theta", "m": 3}})"));
  for (int m = 0; m < 5; ++m) EXPECT_NEAR(th.distribution.probabilities[m], m == 3 ? 1.0 : 0.0, 1e-10);
}

TEST(Experiment, LossyDetectorsStillNormalize) {
  auto c = parse_config(kPlusConfig);
  c.eta = 0.8;
  const auto r = run_simulation(c);
  double sum = 0.0;
  for (double p : r.distribution.probabilities) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_LT(r.distribution.success_probability, run_simulation(parse_config(kPlusConfig)).distribution.success_probability);
}

TEST(Experiment, SamplingNeedsShots) {
  auto c = parse_config(kPlusConfig);
  c.shots = 0;
  try {
    run_sampling(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    EXPECT_STREQ(e.what(), "shots must be positive for sample");
  }
}
