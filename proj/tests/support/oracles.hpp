#pragma once

// Reference computations written directly from the definitions, kept apart
// from the library so that tests never compare a routine with itself.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracles {

using C = std::complex<double>;
using Grid2 = std::vector<std::vector<C>>;

inline C root(int k, int n) { return std::polar(1.0, -2.0 * std::numbers::pi * k / n); }

// U(i, j) = w^{ij} / sqrt(n) with w = exp(-2 pi i / n).
inline Grid2 dft(int n) {
  Grid2 u(n, std::vector<C>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u[i][j] = root((i * j) % n, n) / std::sqrt(double(n));
  return u;
}

inline C permanent(const Grid2& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  C total = 0.0;
  do {
    C prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= a[i][p[i]];
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// <out| R(U) |in> with U a transfer matrix (photon in j -> sum_i U(i,j) |i>).
inline C amplitude(const Grid2& u, const std::vector<int>& in, const std::vector<int>& out) {
  std::vector<int> rows, cols;
  for (int i = 0; i < (int)out.size(); ++i) rows.insert(rows.end(), out[i], i);
  for (int j = 0; j < (int)in.size(); ++j) cols.insert(cols.end(), in[j], j);
  if (rows.size() != cols.size()) return 0.0;
  Grid2 sub(rows.size(), std::vector<C>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = u[rows[r]][cols[c]];
  double norm = 1.0;
  for (int x : in) norm *= factorial(x);
  for (int x : out) norm *= factorial(x);
  return permanent(sub) / std::sqrt(norm);
}

// |<theta_m|psi>|^2 for the (N+1) truncated phase states, normalized over m.
inline std::vector<double> projection(const std::vector<C>& psi, int n) {
  std::vector<double> p(n + 1, 0.0);
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    C a = 0.0;
    for (int k = 0; k <= n && k < (int)psi.size(); ++k)
      a += std::polar(1.0, -2.0 * std::numbers::pi * k * m / (n + 1)) * psi[k];
    p[m] = std::norm(a) / (n + 1);
    sum += p[m];
  }
  for (auto& x : p) x /= sum;
  return p;
}

// (1/2pi) |sum_n conj(psi_n) e^{i n theta}|^2
inline double density(const std::vector<C>& psi, double theta) {
  C a = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) a += std::conj(psi[n]) * std::polar(1.0, n * theta);
  return std::norm(a) / (2.0 * std::numbers::pi);
}

}  // namespace oracles
