#include "canonphase/multiport.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "canonphase/error.hpp"
#include "canonphase/format.hpp"
#include "canonphase/rng.hpp"

namespace canonphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void require_dim(int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "dimension must be at least 2");
}

}  // namespace

Complex unit_root(std::int64_t k, std::int64_t n) {
  std::int64_t r = k % n;
  if (r < 0) r += n;
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, -1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, 1.0};
    }
  }
  const double angle = -kTwoPi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

double unitarity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix prod = m * m.adjoint();
  return (prod - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix shapes differ");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_modulus_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix shapes differ");
  if (a.size() == 0) return 0.0;
  return (a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw Error(ErrorKind::ShapeMismatch, "unitary matrix must be square");
  require_dim(static_cast<int>(m_.rows()));
  const double dev = unitarity_deviation(m_);
  if (!(dev < tolerance)) {
    throw Error(ErrorKind::NonUnitaryMatrix,
                "matrix is not unitary (max |UU^dagger - I| = " + format_real(dev) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  require_dim(dim);
  return UnitaryMatrix(Unchecked{}, ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(Unchecked{}, m_.adjoint()); }

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "cannot multiply unitaries of different dimension");
  return UnitaryMatrix(UnitaryMatrix::Unchecked{}, a.m_ * b.m_);
}

UnitaryMatrix dft_matrix(int dim) {
  require_dim(dim);
  const double scale = std::sqrt(1.0 / dim);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = scale * unit_root(std::int64_t{i} * j, dim);
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix phase_pointer_network(int dim) { return dft_matrix(dim).adjoint(); }

UnitaryMatrix phase_shift_matrix(int dim, int mode, double phi) {
  require_dim(dim);
  if (mode < 0 || mode >= dim)
    throw Error(ErrorKind::ModeOutOfRange, "phase shifter mode " + std::to_string(mode) +
                                               " outside [0, " + std::to_string(dim) + ")");
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  m(mode, mode) = std::polar(1.0, phi);
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix haar_random_unitary(int dim, std::uint64_t seed) {
  require_dim(dim);
  SplitMix64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrix(std::move(q));
}

const char* to_string(BeamSplitterConvention convention) {
  switch (convention) {
    case BeamSplitterConvention::Symmetric: return "symmetric";
    case BeamSplitterConvention::RealAsymmetric: return "real-asymmetric";
  }
  return "unknown";
}

InterferometerElement beam_splitter(int mode_a, int mode_b, double transmittance, double phase) {
  InterferometerElement e;
  e.kind = ElementKind::BeamSplitter;
  e.mode_a = mode_a;
  e.mode_b = mode_b;
  e.transmittance = transmittance;
  e.phase = wrap_phase(phase);
  return e;
}

InterferometerElement phase_shifter(int mode, double phase, bool detection_irrelevant) {
  InterferometerElement e;
  e.kind = ElementKind::PhaseShifter;
  e.mode_a = mode;
  e.phase = wrap_phase(phase);
  e.detection_irrelevant = detection_irrelevant;
  return e;
}

ComplexMatrix element_block(const InterferometerElement& e, BeamSplitterConvention convention) {
  const Complex rot = std::polar(1.0, e.phase);
  if (e.kind == ElementKind::PhaseShifter) {
    ComplexMatrix b(1, 1);
    b(0, 0) = rot;
    return b;
  }
  const double tau = std::sqrt(e.transmittance);
  const double rho = std::sqrt(1.0 - e.transmittance);
  ComplexMatrix b(2, 2);
  if (convention == BeamSplitterConvention::Symmetric) {
    const Complex i(0.0, 1.0);
    b << rot * tau, i * rho, i * rot * rho, tau;
  } else {
    b << rot * tau, -rho, rot * rho, tau;
  }
  return b;
}

std::size_t InterferometerNetlist::beam_splitter_count() const {
  std::size_t n = 0;
  for (const auto& e : elements)
    if (e.kind == ElementKind::BeamSplitter) ++n;
  return n;
}

void InterferometerNetlist::validate() const {
  if (dim < 2) throw Error(ErrorKind::InvalidNetlist, "netlist dimension must be at least 2");
  auto bad = [](std::size_t idx, const std::string& what) {
    return Error(ErrorKind::InvalidNetlist, "element " + std::to_string(idx) + ": " + what);
  };
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& e = elements[k];
    if (e.mode_a < 0 || e.mode_a >= dim) throw bad(k, "mode index out of range");
    if (!(e.phase >= 0.0 && e.phase < kTwoPi)) throw bad(k, "phase outside [0, 2pi)");
    if (e.kind == ElementKind::BeamSplitter) {
      if (e.mode_b < 0 || e.mode_b >= dim) throw bad(k, "mode index out of range");
      if (e.mode_a == e.mode_b) throw bad(k, "beam splitter modes must differ");
      if (!(e.transmittance >= 0.0 && e.transmittance <= 1.0))
        throw bad(k, "transmittance outside [0, 1]");
    }
  }
}

InterferometerNetlist decompose(const ComplexMatrix& u, BeamSplitterConvention convention) {
  return decompose(UnitaryMatrix(u), convention);
}

InterferometerNetlist decompose(const UnitaryMatrix& u, BeamSplitterConvention convention) {
  const int n = u.dim();
  ComplexMatrix w = u.matrix();
  InterferometerNetlist out;
  out.dim = n;
  out.elements.reserve(static_cast<std::size_t>(n * (n - 1) / 2 + n));

  for (int row = n - 1; row >= 1; --row) {
    for (int col = 0; col < row; ++col) {
      // Column operation on (col, row) that moves all weight of
      // w(row, col) onto the diagonal entry w(row, row).
      const Complex a = w(row, col);
      const Complex b = w(row, row);
      double t = 1.0;
      double phi = 0.0;
      if (a != Complex(0.0, 0.0)) {
        const double na = std::norm(a);
        const double nb = std::norm(b);
        t = nb / (na + nb);
        if (nb > 0.0) {
          phi = std::arg(a) - std::arg(b);
          if (convention == BeamSplitterConvention::Symmetric) phi -= std::numbers::pi / 2;
        }
      }
      auto bs = beam_splitter(col, row, t, phi);
      const ComplexMatrix blk = element_block(bs, convention);
      const ComplexMatrix inv = blk.adjoint();
      for (int r = 0; r < n; ++r) {
        const Complex x = w(r, col);
        const Complex y = w(r, row);
        w(r, col) = x * inv(0, 0) + y * inv(1, 0);
        w(r, row) = x * inv(0, 1) + y * inv(1, 1);
      }
      w(row, col) = 0.0;
      out.elements.push_back(bs);
    }
  }
  for (int k = 0; k < n; ++k) out.elements.push_back(phase_shifter(k, std::arg(w(k, k)), true));
  return out;
}

UnitaryMatrix recompose(const InterferometerNetlist& netlist, BeamSplitterConvention convention) {
  netlist.validate();
  const int n = netlist.dim;
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (const auto& e : netlist.elements) {
    const ComplexMatrix blk = element_block(e, convention);
    if (e.kind == ElementKind::PhaseShifter) {
      m.row(e.mode_a) *= blk(0, 0);
      continue;
    }
    const Eigen::RowVectorXcd ra = m.row(e.mode_a);
    const Eigen::RowVectorXcd rb = m.row(e.mode_b);
    m.row(e.mode_a) = blk(0, 0) * ra + blk(0, 1) * rb;
    m.row(e.mode_b) = blk(1, 0) * ra + blk(1, 1) * rb;
  }
  return UnitaryMatrix(std::move(m));
}

std::string to_text(const InterferometerNetlist& netlist) {
  std::string s = "DIM " + std::to_string(netlist.dim) + "\n";
  for (const auto& e : netlist.elements) {
    if (e.kind == ElementKind::BeamSplitter) {
      s += "BS " + std::to_string(e.mode_a) + " " + std::to_string(e.mode_b) + " " +
           format_real(e.transmittance) + " " + format_real(e.phase) + "\n";
    } else {
      s += "PS " + std::to_string(e.mode_a) + " " + format_real(e.phase) + "\n";
    }
  }
  return s;
}

InterferometerNetlist parse_netlist(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  InterferometerNetlist out;
  bool have_dim = false;
  int lineno = 0;
  auto fail = [&lineno](const std::string& what) {
    return Error(ErrorKind::InvalidNetlist, "netlist line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "DIM") {
      if (have_dim) throw fail("duplicate DIM header");
      if (!(fields >> out.dim)) throw fail("malformed DIM header");
      have_dim = true;
    } else if (tag == "BS") {
      if (!have_dim) throw fail("element before DIM header");
      int a = 0, b = 0;
      double t = 0.0, phi = 0.0;
      if (!(fields >> a >> b >> t >> phi)) throw fail("malformed BS line");
      out.elements.push_back(beam_splitter(a, b, t, phi));
    } else if (tag == "PS") {
      if (!have_dim) throw fail("element before DIM header");
      int a = 0;
      double phi = 0.0;
      if (!(fields >> a >> phi)) throw fail("malformed PS line");
      out.elements.push_back(phase_shifter(a, phi));
    } else {
      throw fail("unknown element tag '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra) throw fail("trailing fields");
  }
  if (!have_dim) throw Error(ErrorKind::InvalidNetlist, "netlist has no DIM header");
  out.validate();
  return out;
}

}  // namespace canonphase
