#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "canonphase/measurement.hpp"
#include "canonphase/states.hpp"

namespace canonphase {

/// Canonical phase density P(theta) = (1/2pi) |sum_n <psi|n> e^{i n theta}|^2.
double canonical_density(const SingleModeState& psi, double theta);

/// Trapezoid rule for the integral of canonical_density over [0, 2pi).
double integrate_canonical_density(const SingleModeState& psi, int points = 10000);

/// Pr(theta_m) = |<theta_m|psi>|^2 / sum_p |<theta_p|psi>|^2, computed directly
/// from the truncated phase states. success_probability holds the
/// unnormalized sum over p.
RetainedDistribution projection_distribution(const SingleModeState& psi, const PhaseGrid& grid);

/// Mode-0 state left after projecting the pointer event m onto the reference
/// and vacuum ancillas:
///   kappa2 * sum_n (-1)^{N-n} C(N,n)^{-1/2} omega^{-nm} conj(b_{N-n}) |n>
/// with kappa1 = (N+1)^{-N/2} and kappa2 = kappa1 omega^{-m} sqrt(N!).
struct ClosedFormAmplitude {
  double kappa1 = 0.0;
  Complex kappa2;
  /// Terms of the sum without the kappa2 prefactor, n = 0..N.
  std::vector<Complex> expansion;

  Complex coefficient(int n) const { return kappa2 * expansion[static_cast<std::size_t>(n)]; }
  /// Pointer-event amplitude <phi_m|psi>.
  Complex amplitude(const SingleModeState& psi) const;
};

ClosedFormAmplitude closed_form_pointer_state(const SingleModeState& reference,
                                              const PhaseGrid& grid, int m);

/// Pointer-event amplitude of the phase-measuring multiport by the closed
/// form. Agrees in phase with the permanent path through
/// phase_pointer_network(N+1).
Complex closed_form_pointer_amplitude(const SingleModeState& psi, const SingleModeState& reference,
                                      const PhaseGrid& grid, int m);

// The identity checks return |lhs - rhs| / max(1, |lhs|).

/// prod_{j != m} (x + omega^j y) against sum_n x^n (-omega^m y)^{N-n}.
double identity_check(int n, Complex x, Complex y, int m);

/// X^{N+1} + (-1)^N against prod_j (X + omega^j).
double root_product_check(int n, Complex x);

/// prod_{j != m} (X + omega^j) against (-1)^N omega^{mN} (1 - q^{N+1}) / (1 - q)
/// with q = -X omega^{-m}. Returns 0 when q is too close to 1 for the
/// quotient to be meaningful.
double divided_product_check(int n, Complex x, int m);

struct ConvergenceRow {
  int n = 0;
  double sup_distance = 0.0;
};

/// For each N: max_m |(N+1)/(2pi) Pr(theta_m) - P(theta_m)|, with Pr from
/// projection_distribution and P from every coefficient of psi.
std::vector<ConvergenceRow> convergence_report(const SingleModeState& psi,
                                               std::span<const int> n_list);

}  // namespace canonphase
