#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canonphase/multiport.hpp"

namespace canonphase {

/// Sum over all n! permutations. Reference for the Ryser kernels only.
Complex naive_permanent(const ComplexMatrix& m);

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  /// Deliberately wrong sign on kappa2; the closed-form suite must catch it.
  bool flip_kappa2_sign = false;
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst = 0.0;  // largest observed deviation
  double tolerance = 0.0;
  bool ok() const { return passed == total; }
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});

}  // namespace canonphase
