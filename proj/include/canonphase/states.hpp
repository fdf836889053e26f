#pragma once

#include <span>
#include <vector>

#include "canonphase/fock.hpp"
#include "canonphase/multiport.hpp"

namespace canonphase {

/// Phase lattice theta_m = m * 2*pi/(N+1), m = 0..N.
class PhaseGrid {
 public:
  explicit PhaseGrid(int n);

  int n() const { return n_; }
  int modes() const { return n_ + 1; }
  double delta_theta() const;
  double theta(int m) const;
  /// exp(-2*pi*i/(N+1))
  Complex omega() const { return omega_power(1); }
  /// omega^k, reduced modulo N+1 before evaluation.
  Complex omega_power(std::int64_t k) const { return unit_root(k, n_ + 1); }

 private:
  int n_;
};

/// C(n, k) as a double; exact while the value fits in 53 bits.
double binomial_coefficient(int n, int k);

/// Norm deviation above which a state is flagged as renormalized.
inline constexpr double kRenormalizeWarning = 1e-6;
/// Largest discarded weight allowed when truncating a coherent state.
inline constexpr double kCoherentTailBound = 1e-8;

/// Number-basis coefficients c_0..c_cutoff of one mode, normalized on
/// construction.
class SingleModeState {
 public:
  explicit SingleModeState(std::vector<Complex> coefficients);

  int cutoff() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Complex>& coefficients() const { return c_; }
  /// c_n, or 0 beyond the cutoff.
  Complex coefficient(int n) const;
  /// Photon numbers with a non-zero coefficient.
  std::vector<int> support() const;
  double mean_photon_number() const;
  /// True when the input norm differed from 1 by more than kRenormalizeWarning.
  bool renormalized() const { return renormalized_; }

 private:
  std::vector<Complex> c_;
  bool renormalized_ = false;
};

/// |theta_m> = (N+1)^{-1/2} sum_{n<=N} exp(i n theta_m) |n>
SingleModeState theta_state(const PhaseGrid& grid, int m);

/// 2^{-N/2} sum_n (-1)^n C(N,n)^{1/2} |n>
SingleModeState binomial_reference(int n);

SingleModeState number_state(int n, int cutoff);
SingleModeState coherent_state(Complex alpha, int cutoff);
SingleModeState custom_state(std::vector<Complex> coefficients);

/// Product input of the phase-measuring multiport: signal in mode 0,
/// reference in mode 1, vacuum in modes 2..N.
MultimodeState assemble_input(const SingleModeState& signal, const SingleModeState& reference,
                              const PhaseGrid& grid);

}  // namespace canonphase
