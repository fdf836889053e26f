#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "canonphase/multiport.hpp"

namespace canonphase {

/// Photon counts per mode.
class FockPattern {
 public:
  FockPattern() = default;
  explicit FockPattern(std::vector<int> occupations);
  FockPattern(std::initializer_list<int> occupations)
      : FockPattern(std::vector<int>(occupations)) {}

  int modes() const { return static_cast<int>(occ_.size()); }
  int total() const;
  int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& occupations() const { return occ_; }

  /// Product of occupation factorials.
  double factorial_product() const;

  std::string to_string() const;

  friend auto operator<=>(const FockPattern&, const FockPattern&) = default;

 private:
  std::vector<int> occ_;
};

/// Photon caps for the permanent path and the polynomial-expansion oracle.
inline constexpr int kMaxEvolvePhotons = 20;
inline constexpr int kMaxBruteForcePhotons = 8;
/// Terms with smaller modulus are dropped after evolution.
inline constexpr double kPruneThreshold = 1e-15;

/// Sparse superposition of Fock patterns, iterated in lexicographic order.
class MultimodeState {
 public:
  using Terms = std::map<FockPattern, Complex>;

  explicit MultimodeState(int modes);
  static MultimodeState basis(const FockPattern& pattern);

  int modes() const { return modes_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Adds `amplitude` to the coefficient of `pattern`.
  void add(const FockPattern& pattern, Complex amplitude);
  Complex amplitude(const FockPattern& pattern) const;

  double norm_squared() const;
  /// Squared norm per total photon number.
  std::map<int, double> sector_norms() const;
  int max_total() const;

  MultimodeState normalized() const;

 private:
  int modes_;
  Terms terms_;
};

/// <a|b>
Complex inner_product(const MultimodeState& a, const MultimodeState& b);

/// Every pattern of `total` photons in `modes` modes, lexicographic order.
std::vector<FockPattern> enumerate_sector(int modes, int total);

/// <output| R(U) |input> = per(U_sub) / sqrt(prod input! prod output!), where
/// U_sub repeats row i output[i] times and column j input[j] times.
Complex transition_amplitude(const UnitaryMatrix& u, const FockPattern& input,
                             const FockPattern& output);

/// Applies the network to every photon-number sector through transition
/// amplitudes.
MultimodeState evolve(const UnitaryMatrix& u, const MultimodeState& state);

/// Independent reference for evolve: substitutes a_j^dagger -> sum_i U(i,j) a_i^dagger
/// monomial by monomial and collects terms. No permanents involved.
MultimodeState brute_force_evolve(const UnitaryMatrix& u, const MultimodeState& state);

}  // namespace canonphase
