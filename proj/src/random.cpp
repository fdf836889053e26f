#include "canonphase/random.hpp"

namespace canonphase {

Complex random_complex(SplitMix64& rng) {
  const double re = 2.0 * rng.uniform() - 1.0;
  const double im = 2.0 * rng.uniform() - 1.0;
  return {re, im};
}

ComplexMatrix random_complex_matrix(int rows, int cols, SplitMix64& rng) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
  return m;
}

SingleModeState random_single_mode_state(int cutoff, SplitMix64& rng) {
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
  for (auto& x : c) x = random_complex(rng);
  return SingleModeState(std::move(c));
}

MultimodeState random_multimode_state(int modes, int max_photons, int terms, SplitMix64& rng) {
  MultimodeState s(modes);
  for (int t = 0; t < terms; ++t) {
    const int total = static_cast<int>(rng() % static_cast<std::uint64_t>(max_photons + 1));
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    for (int k = 0; k < total; ++k) ++occ[rng() % static_cast<std::uint64_t>(modes)];
    s.add(FockPattern(std::move(occ)), random_complex(rng));
  }
  return s.normalized();
}

}  // namespace canonphase
