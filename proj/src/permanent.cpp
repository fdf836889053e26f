#include "canonphase/permanent.hpp"

#include <bit>
#include <cstdint>
#include <vector>

#include "canonphase/error.hpp"

namespace canonphase {

namespace {

void check_size(int n) {
  if (n > kMaxPermanentSize)
    throw Error(ErrorKind::SizeLimit, "permanent of size " + std::to_string(n) +
                                          " exceeds the limit of " +
                                          std::to_string(kMaxPermanentSize));
}

}  // namespace

Complex permanent(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  check_size(n);
  if (n == 0) return {1.0, 0.0};

  // per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij, S walked in
  // Gray-code order so each step adds or removes one column.
  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    const bool added = (gray & bit) != 0;
    for (int i = 0; i < n; ++i) {
      if (added)
        row_sum[i] += m(i, j);
      else
        row_sum[i] -= m(i, j);
    }
    Complex prod = row_sum[0];
    for (int i = 1; i < n; ++i) prod *= row_sum[i];
    if (std::popcount(gray) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return (n % 2 == 0) ? total : -total;
}

Complex permanent_repeated_columns(const ComplexMatrix& m, std::span<const int> multiplicity) {
  if (static_cast<std::size_t>(m.cols()) != multiplicity.size())
    throw Error(ErrorKind::ShapeMismatch, "one multiplicity per column required");
  const int n = static_cast<int>(m.rows());
  int total_cols = 0;
  for (int k : multiplicity) {
    if (k < 0) throw Error(ErrorKind::ShapeMismatch, "negative column multiplicity");
    total_cols += k;
  }
  if (total_cols != n)
    throw Error(ErrorKind::ShapeMismatch, "column multiplicities must sum to the row count");
  check_size(n);
  if (n == 0) return {1.0, 0.0};

  // Only columns that actually occur take part.
  std::vector<int> cols;
  std::vector<int> mult;
  for (std::size_t j = 0; j < multiplicity.size(); ++j) {
    if (multiplicity[j] > 0) {
      cols.push_back(static_cast<int>(j));
      mult.push_back(multiplicity[j]);
    }
  }
  const std::size_t g = cols.size();

  // binom[j][k] = C(mult[j], k)
  std::vector<std::vector<double>> binom(g);
  for (std::size_t j = 0; j < g; ++j) {
    binom[j].assign(static_cast<std::size_t>(mult[j]) + 1, 1.0);
    for (int k = 1; k <= mult[j]; ++k)
      binom[j][k] = binom[j][k - 1] * static_cast<double>(mult[j] - k + 1) / k;
  }

  // Odometer over chosen counts k_j in [0, mult_j]; row sums hold
  // sum_j k_j * m(i, cols[j]). A plain increment adds one column, a carry
  // rebuilds the sums so rounding does not drift.
  std::vector<int> chosen(g, 0);
  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  int chosen_total = 0;
  Complex total(0.0, 0.0);
  while (true) {
    std::size_t d = 0;
    while (d < g && chosen[d] == mult[d]) {
      chosen_total -= chosen[d];
      chosen[d] = 0;
      ++d;
    }
    if (d == g) break;
    ++chosen[d];
    ++chosen_total;
    if (d == 0) {
      for (int i = 0; i < n; ++i) row_sum[i] += m(i, cols[0]);
    } else {
      for (int i = 0; i < n; ++i) {
        Complex s(0.0, 0.0);
        for (std::size_t j = 0; j < g; ++j)
          if (chosen[j] != 0) s += static_cast<double>(chosen[j]) * m(i, cols[j]);
        row_sum[i] = s;
      }
    }

    double weight = 1.0;
    for (std::size_t j = 0; j < g; ++j) weight *= binom[j][chosen[j]];
    Complex prod = row_sum[0];
    for (int i = 1; i < n; ++i) prod *= row_sum[i];
    if ((n - chosen_total) % 2 == 0)
      total += weight * prod;
    else
      total -= weight * prod;
  }
  return total;
}

}  // namespace canonphase
