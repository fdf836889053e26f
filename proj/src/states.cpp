#include "canonphase/states.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "canonphase/error.hpp"

namespace canonphase {

PhaseGrid::PhaseGrid(int n) : n_(n) {
  if (n < 0) throw Error(ErrorKind::InvalidDimension, "phase grid needs N >= 0");
}

double PhaseGrid::delta_theta() const { return 2.0 * std::numbers::pi / (n_ + 1); }

double PhaseGrid::theta(int m) const {
  if (m < 0 || m > n_)
    throw Error(ErrorKind::IndexOutOfRange,
                "phase index " + std::to_string(m) + " outside [0, " + std::to_string(n_) + "]");
  return m * delta_theta();
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 62) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return static_cast<double>(r);
  }
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

SingleModeState::SingleModeState(std::vector<Complex> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw Error(ErrorKind::InvalidState, "state needs at least one coefficient");
  double norm2 = 0.0;
  for (const auto& c : c_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::InvalidState, "state coefficients must be finite");
    norm2 += std::norm(c);
  }
  if (norm2 == 0.0) throw Error(ErrorKind::InvalidState, "state vector is zero");
  const double norm = std::sqrt(norm2);
  renormalized_ = std::abs(norm - 1.0) > kRenormalizeWarning;
  if (norm != 1.0)
    for (auto& c : c_) c /= norm;
}

Complex SingleModeState::coefficient(int n) const {
  if (n < 0 || n > cutoff()) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(n)];
}

std::vector<int> SingleModeState::support() const {
  std::vector<int> s;
  for (int n = 0; n <= cutoff(); ++n)
    if (c_[static_cast<std::size_t>(n)] != Complex(0.0, 0.0)) s.push_back(n);
  return s;
}

double SingleModeState::mean_photon_number() const {
  double s = 0.0;
  for (int n = 0; n <= cutoff(); ++n) s += n * std::norm(c_[static_cast<std::size_t>(n)]);
  return s;
}

SingleModeState theta_state(const PhaseGrid& grid, int m) {
  if (m < 0 || m > grid.n())
    throw Error(ErrorKind::IndexOutOfRange, "theta state index " + std::to_string(m) +
                                                " outside [0, " + std::to_string(grid.n()) + "]");
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.modes()));
  std::vector<Complex> c(static_cast<std::size_t>(grid.modes()));
  // exp(i n theta_m) = omega^{-n m}
  for (int n = 0; n <= grid.n(); ++n) c[n] = scale * grid.omega_power(-std::int64_t{n} * m);
  return SingleModeState(std::move(c));
}

SingleModeState binomial_reference(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidDimension, "binomial reference needs N >= 0");
  const double scale = std::pow(2.0, -0.5 * n);
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double mag = scale * std::sqrt(binomial_coefficient(n, k));
    c[k] = (k % 2 == 0) ? mag : -mag;
  }
  return SingleModeState(std::move(c));
}

SingleModeState number_state(int n, int cutoff) {
  if (n < 0) throw Error(ErrorKind::InvalidState, "photon number must be non-negative");
  if (cutoff < n)
    throw Error(ErrorKind::CutoffTooSmall, "cutoff " + std::to_string(cutoff) +
                                               " is below the photon number " + std::to_string(n));
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1, Complex(0.0, 0.0));
  c[n] = 1.0;
  return SingleModeState(std::move(c));
}

SingleModeState coherent_state(Complex alpha, int cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::CutoffTooSmall, "cutoff must be non-negative");
  const double mean = std::norm(alpha);
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
  Complex term = std::exp(-0.5 * mean);
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    c[n] = term;
  }
  // Discarded Poisson weight sum_{n > cutoff} e^{-|a|^2} |a|^{2n} / n!
  double p = std::norm(c[static_cast<std::size_t>(cutoff)]);
  double tail = 0.0;
  for (int n = cutoff + 1; n < cutoff + 100000; ++n) {
    p *= mean / n;
    tail += p;
    if (p <= tail * 1e-17 || p == 0.0) break;
  }
  if (!(tail < kCoherentTailBound))
    throw Error(ErrorKind::CutoffTooSmall, "coherent state truncation at cutoff " +
                                               std::to_string(cutoff) + " discards more than 1e-8");
  return SingleModeState(std::move(c));
}

SingleModeState custom_state(std::vector<Complex> coefficients) {
  return SingleModeState(std::move(coefficients));
}

MultimodeState assemble_input(const SingleModeState& signal, const SingleModeState& reference,
                              const PhaseGrid& grid) {
  if (grid.modes() < 2)
    throw Error(ErrorKind::NeedTwoModes, "the multiport needs at least two modes");
  MultimodeState state(grid.modes());
  std::vector<int> occ(static_cast<std::size_t>(grid.modes()), 0);
  for (int a : signal.support()) {
    for (int b : reference.support()) {
      occ[0] = a;
      occ[1] = b;
      state.add(FockPattern(occ), signal.coefficient(a) * reference.coefficient(b));
    }
  }
  return state;
}

}  // namespace canonphase
