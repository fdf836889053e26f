#pragma once

#include "canonphase/fock.hpp"
#include "canonphase/rng.hpp"
#include "canonphase/states.hpp"

namespace canonphase {

/// Real and imaginary parts uniform in [-1, 1).
Complex random_complex(SplitMix64& rng);
ComplexMatrix random_complex_matrix(int rows, int cols, SplitMix64& rng);

/// Normalized state with random coefficients on n = 0..cutoff.
SingleModeState random_single_mode_state(int cutoff, SplitMix64& rng);

/// Normalized superposition of `terms` random patterns whose totals do not
/// exceed `max_photons`.
MultimodeState random_multimode_state(int modes, int max_photons, int terms, SplitMix64& rng);

}  // namespace canonphase
