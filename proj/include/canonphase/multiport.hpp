#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace canonphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// exp(-2*pi*i*k/n), exact at quarter turns so that small DFTs carry no
/// spurious 1e-16 imaginary parts.
Complex unit_root(std::int64_t k, std::int64_t n);

/// Largest absolute entry of U*U^dagger - I.
double unitarity_deviation(const ComplexMatrix& m);
/// Largest absolute entrywise difference.
double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest difference between entry moduli, ignoring phases.
double max_modulus_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

/// Square complex matrix checked for unitarity at construction.
///
/// Mode transformations are stored as transfer matrices: a photon entering
/// input mode j leaves in the superposition sum_i U(i, j) |1_i>. The adjoint
/// of a transfer matrix is the Heisenberg-picture matrix that expresses each
/// output creation operator through the input ones.
class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kTolerance);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  UnitaryMatrix adjoint() const;
  /// Matrix product; `a * b` applies b first.
  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  struct Unchecked {};
  UnitaryMatrix(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// U(i, j) = exp(-2*pi*i*i*j/dim) / sqrt(dim).
UnitaryMatrix dft_matrix(int dim);

/// Transfer matrix of the phase-measuring multiport whose Heisenberg matrix
/// is dft_matrix(dim). Output mode m of this network carries the pointer for
/// phase 2*pi*m/dim.
UnitaryMatrix phase_pointer_network(int dim);

/// Diagonal matrix with exp(i*phi) at (mode, mode) and 1 elsewhere.
UnitaryMatrix phase_shift_matrix(int dim, int mode, double phi);

/// Haar-distributed unitary from QR of a complex Ginibre matrix.
UnitaryMatrix haar_random_unitary(int dim, std::uint64_t seed);

enum class ElementKind { BeamSplitter, PhaseShifter };

/// 2x2 beam-splitter algebra. With tau = sqrt(T), rho = sqrt(1 - T) and an
/// internal phase phi applied on the first mode:
///   Symmetric:      [[e^{i phi} tau, i rho], [i e^{i phi} rho, tau]]
///   RealAsymmetric: [[e^{i phi} tau, -rho], [e^{i phi} rho, tau]]
enum class BeamSplitterConvention { Symmetric, RealAsymmetric };

const char* to_string(BeamSplitterConvention convention);

struct InterferometerElement {
  ElementKind kind = ElementKind::PhaseShifter;
  int mode_a = 0;
  int mode_b = -1;  // unused for phase shifters
  double transmittance = 1.0;
  double phase = 0.0;
  // Output-side phases have no effect on photocount statistics.
  bool detection_irrelevant = false;
};

InterferometerElement beam_splitter(int mode_a, int mode_b, double transmittance,
                                    double phase);
InterferometerElement phase_shifter(int mode, double phase, bool detection_irrelevant = false);

/// 2x2 (beam splitter) or 1x1 (phase shifter) block of an element.
ComplexMatrix element_block(const InterferometerElement& e,
                            BeamSplitterConvention convention = BeamSplitterConvention::Symmetric);

struct InterferometerNetlist {
  int dim = 0;
  std::vector<InterferometerElement> elements;  // physical traversal order

  std::size_t beam_splitter_count() const;
  /// Throws InvalidNetlist if any element violates its invariants.
  void validate() const;
};

/// Triangular (Reck-style) array: the last row is nulled left to right, each
/// entry mixed into the diagonal column, then the leading block is handled
/// recursively. Produces dim*(dim-1)/2 beam splitters followed by one
/// detection-irrelevant phase shifter per mode.
InterferometerNetlist decompose(const UnitaryMatrix& u,
                                BeamSplitterConvention convention = BeamSplitterConvention::Symmetric);
InterferometerNetlist decompose(const ComplexMatrix& u,
                                BeamSplitterConvention convention = BeamSplitterConvention::Symmetric);

UnitaryMatrix recompose(const InterferometerNetlist& netlist,
                        BeamSplitterConvention convention = BeamSplitterConvention::Symmetric);

/// Line format: `DIM k`, then `BS i j transmittance phase` / `PS i phase`.
std::string to_text(const InterferometerNetlist& netlist);
InterferometerNetlist parse_netlist(std::string_view text);

}  // namespace canonphase
