#include "canonphase/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "canonphase/error.hpp"
#include "canonphase/fock.hpp"
#include "canonphase/measurement.hpp"
#include "canonphase/oracle.hpp"
#include "canonphase/permanent.hpp"
#include "canonphase/random.hpp"

namespace canonphase {

Complex naive_permanent(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n > 10) throw Error(ErrorKind::SizeLimit, "naive permanent is limited to size 10");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

class Suite {
 public:
  Suite(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
  }
  void record(double deviation) {
    ++r_.total;
    if (deviation < r_.tolerance) ++r_.passed;
    if (!(deviation <= r_.worst)) r_.worst = deviation;  // NaN sticks
  }
  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

double max_state_deviation(const MultimodeState& a, const MultimodeState& b) {
  double d = 0.0;
  for (const auto& [p, x] : a.terms()) d = std::max(d, std::abs(x - b.amplitude(p)));
  for (const auto& [p, x] : b.terms()) d = std::max(d, std::abs(x - a.amplitude(p)));
  return d;
}

SuiteResult identity_suite(SplitMix64& rng) {
  Suite s("identity", 1e-9);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int m = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    const Complex x = std::polar(10.0 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const Complex y = std::polar(10.0 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    s.record(identity_check(n, x, y, m));
    s.record(root_product_check(n, x));
    s.record(divided_product_check(n, x, m));
  }
  return s.result();
}

SuiteResult permanent_suite(SplitMix64& rng) {
  Suite s("permanent", 1e-12);
  for (int size = 0; size <= 7; ++size) {
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix a = random_complex_matrix(size, size, rng);
      const Complex want = naive_permanent(a);
      s.record(std::abs(permanent(a) - want) / std::max(1.0, std::abs(want)));

      // Same matrix with its columns grouped: draw multiplicities summing to size.
      std::vector<int> mult(static_cast<std::size_t>(std::max(size, 1)), 0);
      for (int k = 0; k < size; ++k) ++mult[rng() % mult.size()];
      ComplexMatrix base = random_complex_matrix(size, static_cast<int>(mult.size()), rng);
      ComplexMatrix expanded(size, size);
      int col = 0;
      for (std::size_t j = 0; j < mult.size(); ++j)
        for (int r = 0; r < mult[j]; ++r) expanded.col(col++) = base.col(static_cast<int>(j));
      const Complex want_grouped = naive_permanent(expanded);
      s.record(std::abs(permanent_repeated_columns(base, mult) - want_grouped) /
               std::max(1.0, std::abs(want_grouped)));
    }
  }
  return s.result();
}

SuiteResult evolve_suite(SplitMix64& rng) {
  Suite s("evolve", 1e-10);
  for (int t = 0; t < 40; ++t) {
    const int modes = 2 + static_cast<int>(rng() % 4);
    const int photons = 1 + static_cast<int>(rng() % 5);
    const UnitaryMatrix u = haar_random_unitary(modes, rng());
    const MultimodeState in = random_multimode_state(modes, photons, 3, rng);
    s.record(max_state_deviation(evolve(u, in), brute_force_evolve(u, in)));
  }
  return s.result();
}

SuiteResult closed_form_suite(SplitMix64& rng, bool flip_kappa2_sign) {
  Suite s("closed-form", 1e-10);
  for (int n = 1; n <= 6; ++n) {
    const PhaseGrid grid(n);
    const UnitaryMatrix u = phase_pointer_network(grid.modes());
    for (int t = 0; t < 3; ++t) {
      const SingleModeState psi = random_single_mode_state(n, rng);
      const SingleModeState ref = random_single_mode_state(n, rng);
      const auto amps = pointer_amplitudes(u, assemble_input(psi, ref, grid));
      for (int m = 0; m <= n; ++m) {
        ClosedFormAmplitude cf = closed_form_pointer_state(ref, grid, m);
        if (flip_kappa2_sign) cf.kappa2 = -cf.kappa2;
        s.record(std::abs(cf.amplitude(psi) - amps[static_cast<std::size_t>(m)]));
      }
    }
  }
  return s.result();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  SplitMix64 rng(options.seed);
  std::vector<SuiteResult> out;
  out.push_back(identity_suite(rng));
  out.push_back(permanent_suite(rng));
  out.push_back(evolve_suite(rng));
  out.push_back(closed_form_suite(rng, options.flip_kappa2_sign));
  return out;
}

}  // namespace canonphase
