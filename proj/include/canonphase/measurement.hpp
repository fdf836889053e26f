#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "canonphase/fock.hpp"
#include "canonphase/multiport.hpp"
#include "canonphase/states.hpp"

namespace canonphase {

/// What a photodetector can tell apart.
enum class DetectorClass { Zero, One, Many };

using DetectorReading = std::vector<DetectorClass>;

DetectorReading read_detectors(const FockPattern& pattern);

/// Pointer(m) or Discarded.
class Outcome {
 public:
  static Outcome pointer(int m) { return Outcome(m); }
  static Outcome discarded() { return Outcome(std::nullopt); }

  bool is_pointer() const { return m_.has_value(); }
  /// Only valid for pointer outcomes.
  int index() const { return *m_; }

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  explicit Outcome(std::optional<int> m) : m_(m) {}
  std::optional<int> m_;
};

/// Pointer(m) iff mode m reads zero and every other mode reads exactly one.
Outcome classify(const FockPattern& pattern);
Outcome classify(const DetectorReading& reading);

/// Probability per detected pattern.
using OutcomeDistribution = std::map<FockPattern, double>;

/// Phase distribution conditioned on pointer events.
struct RetainedDistribution {
  PhaseGrid grid{0};
  std::vector<double> probabilities;
  /// Total probability of pointer events before conditioning.
  double success_probability = 0.0;
};

/// Pure-state component of a mixed signal; weights sum to 1.
struct EnsembleComponent {
  double weight = 1.0;
  MultimodeState state;
};
using Ensemble = std::vector<EnsembleComponent>;

/// Born-rule probabilities of the evolved state.
OutcomeDistribution outcome_distribution(const UnitaryMatrix& u, const MultimodeState& input);
OutcomeDistribution outcome_distribution(const UnitaryMatrix& u, const Ensemble& input);

/// Amplitudes <pointer_m| R(U) |input> for m = 0..N, where N + 1 = U.dim().
/// Only the N-photon sector of the input contributes.
std::vector<Complex> pointer_amplitudes(const UnitaryMatrix& u, const MultimodeState& input);

/// Pr(theta_m) = P(pointer m) / sum_p P(pointer p). Throws ZeroSuccess when
/// no pointer event is possible.
RetainedDistribution retained_distribution(const UnitaryMatrix& u, const MultimodeState& input);
RetainedDistribution retained_distribution(const UnitaryMatrix& u, const Ensemble& input);

/// Classify-then-normalize reduction of a full outcome distribution.
RetainedDistribution reduce_to_retained(const OutcomeDistribution& dist, const PhaseGrid& grid);

/// Each photon survives independently with probability eta.
OutcomeDistribution apply_detector_efficiency(const OutcomeDistribution& dist, double eta);

struct Histogram {
  std::vector<std::uint64_t> counts;  // per pointer index m
  std::uint64_t discarded_count = 0;
  std::uint64_t total_shots = 0;
  std::uint64_t seed = 0;
  std::string rng;

  PhaseGrid grid() const { return PhaseGrid(static_cast<int>(counts.size()) - 1); }
  std::uint64_t retained() const { return total_shots - discarded_count; }
};

/// Draws pointer indices from the conditional distribution; nothing is discarded.
Histogram sample(const RetainedDistribution& dist, std::uint64_t shots, std::uint64_t seed);
/// Draws from {pointer 0..N, discarded} using the success probability.
Histogram sample_with_discards(const RetainedDistribution& dist, std::uint64_t shots,
                               std::uint64_t seed);
/// Draws detected patterns and classifies each one.
Histogram sample(const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed);

/// Pearson statistic over bins with non-zero expectation; infinite if a
/// zero-probability bin received counts.
double chi_square(const Histogram& hist, const std::vector<double>& probabilities);

}  // namespace canonphase
