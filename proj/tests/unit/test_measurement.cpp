#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "canonphase/error.hpp"
#include "canonphase/measurement.hpp"
#include "canonphase/random.hpp"
#include "canonphase/rng.hpp"
#include "canonphase/states.hpp"
#include "oracles.hpp"

using namespace canonphase;

namespace {

RetainedDistribution apparatus(const SingleModeState& psi, int n,
                               const SingleModeState* ref = nullptr) {
  const PhaseGrid g(n);
  return retained_distribution(phase_pointer_network(g.modes()),
                               assemble_input(psi, ref ? *ref : binomial_reference(n), g));
}

void expect_probs(const RetainedDistribution& d, const std::vector<double>& want, double tol) {
  ASSERT_EQ(d.probabilities.size(), want.size());
  for (std::size_t m = 0; m < want.size(); ++m) EXPECT_NEAR(d.probabilities[m], want[m], tol) << m;
}

const SingleModeState kPlus = custom_state({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(classify(FockPattern{1, 0, 1, 1}), Outcome::pointer(1));
  EXPECT_EQ(classify(FockPattern{0, 0, 1, 1}), Outcome::discarded());
  EXPECT_EQ(classify(FockPattern{2, 0, 1, 1}), Outcome::discarded());
  EXPECT_EQ(classify(FockPattern{1, 1, 1, 0}), Outcome::pointer(3));
  EXPECT_EQ(classify(FockPattern{1, 1, 1, 1}), Outcome::discarded());
}

TEST(Classify, DetectorsOnlySeeZeroOneMany) {
  const auto r = read_detectors({0, 1, 2, 7});
  EXPECT_EQ(r, (DetectorReading{DetectorClass::Zero, DetectorClass::One, DetectorClass::Many,
                                DetectorClass::Many}));
  EXPECT_EQ(classify(read_detectors({1, 0, 1})), Outcome::pointer(1));
}

TEST(OutcomeDistribution, Examples) {
  const auto id = outcome_distribution(UnitaryMatrix::identity(3), MultimodeState::basis({0, 2, 1}));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_NEAR(id.at({0, 2, 1}), 1.0, 1e-15);

  const auto hom = outcome_distribution(dft_matrix(2), MultimodeState::basis({1, 1}));
  EXPECT_NEAR(hom.at({2, 0}), 0.5, 1e-15);
  EXPECT_NEAR(hom.at({0, 2}), 0.5, 1e-15);
  EXPECT_NEAR(hom.count({1, 1}) ? hom.at({1, 1}) : 0.0, 0.0, 1e-15);

  const auto vac = outcome_distribution(haar_random_unitary(3, 1), MultimodeState::basis({0, 0, 0}));
  ASSERT_EQ(vac.size(), 1u);
  EXPECT_NEAR(vac.at({0, 0, 0}), 1.0, 1e-15);
}

TEST(Retained, ThetaStatesArePointedAt) {
  for (int n : {1, 3, 5})
    for (int k = 0; k <= n; ++k) {
      std::vector<double> want(n + 1, 0.0);
      want[k] = 1.0;
      expect_probs(apparatus(theta_state(PhaseGrid(n), k), n), want, 1e-10);
    }
}

TEST(Retained, VacuumIsUniform) {
  expect_probs(apparatus(number_state(0, 0), 3), {0.25, 0.25, 0.25, 0.25}, 1e-12);
}

TEST(Retained, PlusState) {
  const auto d = apparatus(kPlus, 3);
  expect_probs(d, {0.5, 0.25, 0.0, 0.25}, 1e-12);
  // Direct sum over the full outcome distribution.
  double success = 0.0;
  for (const auto& [p, x] : outcome_distribution(phase_pointer_network(4),
                                                 assemble_input(kPlus, binomial_reference(3), PhaseGrid(3))))
    if (classify(p).is_pointer()) success += x;
  EXPECT_NEAR(d.success_probability, success, 1e-14);
}

TEST(Retained, MatchesProjectionOracle) {
  SplitMix64 rng(31);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 5; ++t) {
      const auto psi = random_single_mode_state(n, rng);
      expect_probs(apparatus(psi, n), oracles::projection(psi.coefficients(), n), 1e-10);
    }
}

TEST(Retained, ZeroSuccess) {
  const auto vac = number_state(0, 0);
  try {
    apparatus(vac, 2, &vac);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroSuccess);
  }
}

TEST(Retained, PhaseCovariance) {
  SplitMix64 rng(41);
  for (int n : {3, 7}) {
    const PhaseGrid g(n);
    const auto psi = random_single_mode_state(n, rng);
    const auto in = assemble_input(psi, binomial_reference(n), g);
    const auto base = retained_distribution(phase_pointer_network(g.modes()), in);
    for (int k = 0; k <= n; ++k) {
      const auto u = phase_pointer_network(g.modes()) * phase_shift_matrix(g.modes(), 0, k * g.delta_theta());
      const auto shifted = retained_distribution(u, in);
      for (int m = 0; m <= n; ++m)
        EXPECT_NEAR(shifted.probabilities[(m + k) % (n + 1)], base.probabilities[m], 1e-10);
    }
  }
}

TEST(Retained, OutputPhasesIrrelevant) {
  SplitMix64 rng(42);
  const auto u = phase_pointer_network(4);
  const auto in = assemble_input(random_single_mode_state(3, rng), binomial_reference(3), PhaseGrid(3));
  auto v = u;
  for (int k = 0; k < 4; ++k) v = phase_shift_matrix(4, k, 2 * std::numbers::pi * rng.uniform()) * v;
  const auto a = outcome_distribution(u, in);
  const auto b = outcome_distribution(v, in);
  for (const auto& [p, x] : a) EXPECT_NEAR(x, b.count(p) ? b.at(p) : 0.0, 1e-12);
}

TEST(Retained, ConditioningConsistency) {
  SplitMix64 rng(43);
  for (int n = 1; n <= 4; ++n) {
    const PhaseGrid g(n);
    const auto u = haar_random_unitary(g.modes(), rng());
    const auto in = assemble_input(random_single_mode_state(n + 1, rng), random_single_mode_state(n, rng), g);
    const auto direct = retained_distribution(u, in);
    const auto reduced = reduce_to_retained(outcome_distribution(u, in), g);
    for (int m = 0; m <= n; ++m) EXPECT_NEAR(direct.probabilities[m], reduced.probabilities[m], 1e-12);
    EXPECT_NEAR(direct.success_probability, reduced.success_probability, 1e-12);
  }
}

TEST(Retained, HighPhotonNumbersDoNotReachPointers) {
  SplitMix64 rng(44);
  const int n = 3;
  const auto psi = random_single_mode_state(n + 3, rng);
  std::vector<Complex> head(psi.coefficients().begin(), psi.coefficients().begin() + n + 1);
  const auto a = apparatus(psi, n);
  const auto b = apparatus(custom_state(head), n);
  for (int m = 0; m <= n; ++m) EXPECT_NEAR(a.probabilities[m], b.probabilities[m], 1e-10);
  EXPECT_LT(a.success_probability, b.success_probability);
}

TEST(Retained, EnsembleIsConvexMixture) {
  const PhaseGrid g(3);
  const auto u = phase_pointer_network(4);
  const auto s0 = assemble_input(kPlus, binomial_reference(3), g);
  const auto s1 = assemble_input(theta_state(g, 2), binomial_reference(3), g);
  const auto d0 = outcome_distribution(u, s0);
  const auto d1 = outcome_distribution(u, s1);
  const auto mix = outcome_distribution(u, Ensemble{{0.3, s0}, {0.7, s1}});
  for (const auto& [p, x] : mix)
    EXPECT_NEAR(x, 0.3 * (d0.count(p) ? d0.at(p) : 0.0) + 0.7 * (d1.count(p) ? d1.at(p) : 0.0), 1e-14);
}

TEST(Efficiency, Examples) {
  const OutcomeDistribution d{{{1, 0}, 0.3}, {{2, 0}, 0.7}};
  const auto same = apply_detector_efficiency(d, 1.0);
  EXPECT_EQ(same, d);

  const auto one = apply_detector_efficiency({{{1, 0}, 1.0}}, 0.5);
  EXPECT_NEAR(one.at({1, 0}), 0.5, 1e-15);
  EXPECT_NEAR(one.at({0, 0}), 0.5, 1e-15);

  const auto two = apply_detector_efficiency({{{2, 0}, 1.0}}, 0.5);
  EXPECT_NEAR(two.at({2, 0}), 0.25, 1e-15);
  EXPECT_NEAR(two.at({1, 0}), 0.5, 1e-15);
  EXPECT_NEAR(two.at({0, 0}), 0.25, 1e-15);

  for (double eta : {0.0, -0.1, 1.5}) EXPECT_THROW(apply_detector_efficiency(d, eta), Error);
}

TEST(Sampling, ConcentratedDistribution) {
  RetainedDistribution d{PhaseGrid(3), {0.0, 0.0, 1.0, 0.0}, 1.0};
  const auto h = sample(d, 1000, 5);
  EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{0, 0, 1000, 0}));
  EXPECT_EQ(h.discarded_count, 0u);
  EXPECT_EQ(h.rng, "splitmix64");
}

TEST(Sampling, DeterministicAndSeedSensitive) {
  const auto d = apparatus(kPlus, 3);
  const auto a = sample_with_discards(d, 20000, 17);
  const auto b = sample_with_discards(d, 20000, 17);
  const auto c = sample_with_discards(d, 20000, 18);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.discarded_count, b.discarded_count);
  EXPECT_NE(a.counts, c.counts);
}

TEST(Sampling, ChiSquare) {
  const auto d = apparatus(kPlus, 3);
  const auto h = sample(d, 100000, 2718);
  EXPECT_LT(chi_square(h, d.probabilities), 16.27);
  EXPECT_EQ(h.counts[2], 0u);
}

TEST(Sampling, FrequenciesConverge) {
  SplitMix64 rng(3);
  for (const auto& psi : {kPlus, random_single_mode_state(3, rng)}) {
    const auto d = apparatus(psi, 3);
    const auto h = sample(d, 1000000, 99);
    for (int m = 0; m <= 3; ++m)
      EXPECT_LT(std::abs(double(h.counts[m]) / double(h.retained()) - d.probabilities[m]), 5e-3);
  }
}

TEST(Sampling, DiscardRateTracksSuccess) {
  const auto d = apparatus(kPlus, 3);
  const auto h = sample_with_discards(d, 200000, 4);
  EXPECT_NEAR(double(h.retained()) / 200000.0, d.success_probability, 3e-3);
}

TEST(Sampling, FullOutcomeSampler) {
  const PhaseGrid g(2);
  const auto dist = outcome_distribution(phase_pointer_network(3), assemble_input(kPlus, binomial_reference(2), g));
  const auto h = sample(dist, 50000, 8);
  const auto r = reduce_to_retained(dist, g);
  EXPECT_NEAR(double(h.retained()) / 50000.0, r.success_probability, 5e-3);
  EXPECT_THROW(sample(dist, 0, 1), Error);
}
