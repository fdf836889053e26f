#include "canonphase/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "canonphase/error.hpp"

namespace canonphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_index(const PhaseGrid& grid, int m) {
  if (m < 0 || m > grid.n())
    throw Error(ErrorKind::IndexOutOfRange,
                "pointer index " + std::to_string(m) + " outside [0, " + std::to_string(grid.n()) + "]");
}

double scaled_deviation(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace

double canonical_density(const SingleModeState& psi, double theta) {
  Complex s(0.0, 0.0);
  for (int n = 0; n <= psi.cutoff(); ++n) s += std::conj(psi.coefficient(n)) * std::polar(1.0, n * theta);
  return std::norm(s) / kTwoPi;
}

double integrate_canonical_density(const SingleModeState& psi, int points) {
  // Periodic integrand: the trapezoid rule reduces to an equal-weight sum.
  const double h = kTwoPi / points;
  double s = 0.0;
  for (int k = 0; k < points; ++k) s += canonical_density(psi, k * h);
  return s * h;
}

RetainedDistribution projection_distribution(const SingleModeState& psi, const PhaseGrid& grid) {
  const int modes = grid.modes();
  std::vector<double> w(static_cast<std::size_t>(modes));
  double total = 0.0;
  for (int m = 0; m < modes; ++m) {
    // <theta_m|psi> = (N+1)^{-1/2} sum_{n<=N} omega^{nm} psi_n
    Complex s(0.0, 0.0);
    for (int n = 0; n <= std::min(grid.n(), psi.cutoff()); ++n)
      s += grid.omega_power(std::int64_t{n} * m) * psi.coefficient(n);
    w[m] = std::norm(s) / modes;
    total += w[m];
  }
  if (!(total > 0.0))
    throw Error(ErrorKind::ZeroSuccess, "state has no support on the phase-state space");
  for (double& p : w) p /= total;
  return RetainedDistribution{grid, std::move(w), total};
}

Complex ClosedFormAmplitude::amplitude(const SingleModeState& psi) const {
  Complex s(0.0, 0.0);
  for (std::size_t n = 0; n < expansion.size(); ++n)
    s += std::conj(kappa2 * expansion[n]) * psi.coefficient(static_cast<int>(n));
  return s;
}

ClosedFormAmplitude closed_form_pointer_state(const SingleModeState& reference,
                                              const PhaseGrid& grid, int m) {
  check_index(grid, m);
  const int n_max = grid.n();
  double fact = 1.0;
  for (int k = 2; k <= n_max; ++k) fact *= k;

  ClosedFormAmplitude out;
  out.kappa1 = std::pow(static_cast<double>(grid.modes()), -0.5 * n_max);
  out.kappa2 = out.kappa1 * grid.omega_power(-m) * std::sqrt(fact);
  out.expansion.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double sign = ((n_max - n) % 2 == 0) ? 1.0 : -1.0;
    out.expansion[n] = sign / std::sqrt(binomial_coefficient(n_max, n)) *
                       grid.omega_power(-std::int64_t{n} * m) *
                       std::conj(reference.coefficient(n_max - n));
  }
  return out;
}

Complex closed_form_pointer_amplitude(const SingleModeState& psi, const SingleModeState& reference,
                                      const PhaseGrid& grid, int m) {
  return closed_form_pointer_state(reference, grid, m).amplitude(psi);
}

double identity_check(int n, Complex x, Complex y, int m) {
  const PhaseGrid grid(n);
  check_index(grid, m);
  Complex lhs(1.0, 0.0);
  for (int j = 0; j <= n; ++j)
    if (j != m) lhs *= x + grid.omega_power(j) * y;
  const Complex q = -grid.omega_power(m) * y;
  Complex rhs(0.0, 0.0);
  for (int k = 0; k <= n; ++k) rhs += std::pow(x, k) * std::pow(q, n - k);
  return scaled_deviation(lhs, rhs);
}

double root_product_check(int n, Complex x) {
  const PhaseGrid grid(n);
  Complex prod(1.0, 0.0);
  for (int j = 0; j <= n; ++j) prod *= x + grid.omega_power(j);
  const Complex lhs = std::pow(x, n + 1) + ((n % 2 == 0) ? 1.0 : -1.0);
  return scaled_deviation(lhs, prod);
}

double divided_product_check(int n, Complex x, int m) {
  const PhaseGrid grid(n);
  check_index(grid, m);
  const Complex q = -x * grid.omega_power(-m);
  if (std::abs(1.0 - q) < 1e-6) return 0.0;
  Complex lhs(1.0, 0.0);
  for (int j = 0; j <= n; ++j)
    if (j != m) lhs *= x + grid.omega_power(j);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex rhs =
      sign * grid.omega_power(std::int64_t{m} * n) * (1.0 - std::pow(q, n + 1)) / (1.0 - q);
  return scaled_deviation(lhs, rhs);
}

std::vector<ConvergenceRow> convergence_report(const SingleModeState& psi,
                                               std::span<const int> n_list) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    const PhaseGrid grid(n);
    const auto dist = projection_distribution(psi, grid);
    double sup = 0.0;
    for (int m = 0; m <= n; ++m) {
      const double sampled = grid.modes() / kTwoPi * dist.probabilities[m];
      sup = std::max(sup, std::abs(sampled - canonical_density(psi, grid.theta(m))));
    }
    rows.push_back({n, sup});
  }
  return rows;
}

}  // namespace canonphase
