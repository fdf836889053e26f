#include "canonphase/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "canonphase/error.hpp"
#include "canonphase/rng.hpp"

namespace canonphase {

namespace {

// Pointer mass below this is rounding noise, not a usable signal.
constexpr double kZeroSuccess = 1e-24;

FockPattern pointer_pattern(int modes, int m) {
  std::vector<int> occ(static_cast<std::size_t>(modes), 1);
  occ[static_cast<std::size_t>(m)] = 0;
  return FockPattern(std::move(occ));
}

RetainedDistribution normalize_pointer_mass(const PhaseGrid& grid, std::vector<double> mass) {
  double success = 0.0;
  for (double p : mass) success += p;
  if (!(success > kZeroSuccess))
    throw Error(ErrorKind::ZeroSuccess, "no pointer event has non-zero probability");
  for (double& p : mass) p /= success;
  return RetainedDistribution{grid, std::move(mass), success};
}

void check_ensemble(const Ensemble& input) {
  if (input.empty()) throw Error(ErrorKind::InvalidState, "ensemble is empty");
  double w = 0.0;
  for (const auto& c : input) {
    if (!(c.weight >= 0.0)) throw Error(ErrorKind::InvalidState, "ensemble weights must be >= 0");
    w += c.weight;
  }
  if (std::abs(w - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidState, "ensemble weights must sum to 1");
}

// Categorical draw by inverse CDF on an ascending cumulative table.
std::size_t draw(const std::vector<double>& cumulative, SplitMix64& rng) {
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) {
    // u rounded up to the total; take the last bin with positive width.
    std::size_t k = cumulative.size() - 1;
    while (k > 0 && cumulative[k] == cumulative[k - 1]) --k;
    return k;
  }
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> cumulate(const std::vector<double>& weights) {
  std::vector<double> cum(weights.size());
  double s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0)) throw Error(ErrorKind::InvalidState, "negative probability");
    s += weights[k];
    cum[k] = s;
  }
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidState, "cannot sample an empty distribution");
  return cum;
}

void check_shots(std::uint64_t shots) {
  if (shots == 0) throw Error(ErrorKind::InvalidConfig, "shots must be positive for sample");
}

Histogram empty_histogram(int pointer_bins, std::uint64_t shots, std::uint64_t seed) {
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(pointer_bins), 0);
  h.total_shots = shots;
  h.seed = seed;
  h.rng = SplitMix64::kAlgorithm;
  return h;
}

}  // namespace

DetectorReading read_detectors(const FockPattern& pattern) {
  DetectorReading r;
  r.reserve(static_cast<std::size_t>(pattern.modes()));
  for (int n : pattern.occupations())
    r.push_back(n == 0 ? DetectorClass::Zero : n == 1 ? DetectorClass::One : DetectorClass::Many);
  return r;
}

Outcome classify(const DetectorReading& reading) {
  int zero_at = -1;
  for (std::size_t k = 0; k < reading.size(); ++k) {
    switch (reading[k]) {
      case DetectorClass::One:
        break;
      case DetectorClass::Zero:
        if (zero_at >= 0) return Outcome::discarded();
        zero_at = static_cast<int>(k);
        break;
      case DetectorClass::Many:
        return Outcome::discarded();
    }
  }
  return zero_at >= 0 ? Outcome::pointer(zero_at) : Outcome::discarded();
}

Outcome classify(const FockPattern& pattern) { return classify(read_detectors(pattern)); }

OutcomeDistribution outcome_distribution(const UnitaryMatrix& u, const MultimodeState& input) {
  OutcomeDistribution out;
  const MultimodeState evolved = evolve(u, input);
  for (const auto& [q, a] : evolved.terms()) out[q] = std::norm(a);
  return out;
}

OutcomeDistribution outcome_distribution(const UnitaryMatrix& u, const Ensemble& input) {
  check_ensemble(input);
  OutcomeDistribution out;
  for (const auto& c : input)
    for (const auto& [q, p] : outcome_distribution(u, c.state)) out[q] += c.weight * p;
  return out;
}

std::vector<Complex> pointer_amplitudes(const UnitaryMatrix& u, const MultimodeState& input) {
  if (u.dim() != input.modes())
    throw Error(ErrorKind::DimensionMismatch, "state and network dimensions differ");
  const int modes = u.dim();
  const int n = modes - 1;
  std::vector<Complex> amps(static_cast<std::size_t>(modes), Complex(0.0, 0.0));
  for (int m = 0; m < modes; ++m) {
    const FockPattern target = pointer_pattern(modes, m);
    Complex a(0.0, 0.0);
    for (const auto& [p, c] : input.terms())
      if (p.total() == n) a += c * transition_amplitude(u, p, target);
    amps[static_cast<std::size_t>(m)] = a;
  }
  return amps;
}

RetainedDistribution retained_distribution(const UnitaryMatrix& u, const MultimodeState& input) {
  const auto amps = pointer_amplitudes(u, input);
  std::vector<double> mass(amps.size());
  for (std::size_t m = 0; m < amps.size(); ++m) mass[m] = std::norm(amps[m]);
  return normalize_pointer_mass(PhaseGrid(u.dim() - 1), std::move(mass));
}

RetainedDistribution retained_distribution(const UnitaryMatrix& u, const Ensemble& input) {
  check_ensemble(input);
  std::vector<double> mass(static_cast<std::size_t>(u.dim()), 0.0);
  for (const auto& c : input) {
    const auto amps = pointer_amplitudes(u, c.state);
    for (std::size_t m = 0; m < amps.size(); ++m) mass[m] += c.weight * std::norm(amps[m]);
  }
  return normalize_pointer_mass(PhaseGrid(u.dim() - 1), std::move(mass));
}

RetainedDistribution reduce_to_retained(const OutcomeDistribution& dist, const PhaseGrid& grid) {
  std::vector<double> mass(static_cast<std::size_t>(grid.modes()), 0.0);
  for (const auto& [q, p] : dist) {
    if (q.modes() != grid.modes())
      throw Error(ErrorKind::DimensionMismatch, "pattern length differs from the grid");
    const Outcome o = classify(q);
    if (o.is_pointer()) mass[static_cast<std::size_t>(o.index())] += p;
  }
  return normalize_pointer_mass(grid, std::move(mass));
}

OutcomeDistribution apply_detector_efficiency(const OutcomeDistribution& dist, double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw Error(ErrorKind::InvalidEfficiency, "detector efficiency must lie in (0, 1]");
  if (eta == 1.0) return dist;
  OutcomeDistribution out;
  for (const auto& [q, p] : dist) {
    // Binomial thinning mode by mode.
    std::vector<std::pair<std::vector<int>, double>> partial{{{}, p}};
    for (int n : q.occupations()) {
      std::vector<std::pair<std::vector<int>, double>> next;
      next.reserve(partial.size() * static_cast<std::size_t>(n + 1));
      for (const auto& [occ, w] : partial) {
        for (int k = 0; k <= n; ++k) {
          const double b = binomial_coefficient(n, k) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
          auto grown = occ;
          grown.push_back(k);
          next.emplace_back(std::move(grown), w * b);
        }
      }
      partial = std::move(next);
    }
    for (auto& [occ, w] : partial) out[FockPattern(std::move(occ))] += w;
  }
  return out;
}

Histogram sample(const RetainedDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
  check_shots(shots);
  const auto cum = cumulate(dist.probabilities);
  Histogram h = empty_histogram(static_cast<int>(dist.probabilities.size()), shots, seed);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) ++h.counts[draw(cum, rng)];
  return h;
}

Histogram sample_with_discards(const RetainedDistribution& dist, std::uint64_t shots,
                               std::uint64_t seed) {
  check_shots(shots);
  std::vector<double> w;
  w.reserve(dist.probabilities.size() + 1);
  for (double p : dist.probabilities) w.push_back(p * dist.success_probability);
  w.push_back(std::max(0.0, 1.0 - dist.success_probability));
  const auto cum = cumulate(w);
  const std::size_t discard_bin = dist.probabilities.size();
  Histogram h = empty_histogram(static_cast<int>(discard_bin), shots, seed);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t k = draw(cum, rng);
    if (k == discard_bin)
      ++h.discarded_count;
    else
      ++h.counts[k];
  }
  return h;
}

Histogram sample(const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
  check_shots(shots);
  if (dist.empty()) throw Error(ErrorKind::InvalidState, "cannot sample an empty distribution");
  std::vector<int> bins;  // pointer index, or -1 for discarded
  std::vector<double> w;
  const int modes = dist.begin()->first.modes();
  for (const auto& [q, p] : dist) {
    if (q.modes() != modes) throw Error(ErrorKind::DimensionMismatch, "pattern lengths differ");
    const Outcome o = classify(q);
    bins.push_back(o.is_pointer() ? o.index() : -1);
    w.push_back(p);
  }
  const auto cum = cumulate(w);
  Histogram h = empty_histogram(modes, shots, seed);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const int b = bins[draw(cum, rng)];
    if (b < 0)
      ++h.discarded_count;
    else
      ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

double chi_square(const Histogram& hist, const std::vector<double>& probabilities) {
  if (probabilities.size() != hist.counts.size())
    throw Error(ErrorKind::DimensionMismatch, "histogram and distribution sizes differ");
  const double n = static_cast<double>(hist.retained());
  double stat = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double expected = n * probabilities[k];
    const double observed = static_cast<double>(hist.counts[k]);
    if (expected <= 1e-12) {
      if (observed > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    stat += (observed - expected) * (observed - expected) / expected;
  }
  return stat;
}

}  // namespace canonphase
