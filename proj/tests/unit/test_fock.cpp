#include <gtest/gtest.h>

#include <cmath>

#include "canonphase/error.hpp"
#include "canonphase/fock.hpp"
#include "canonphase/random.hpp"
#include "canonphase/rng.hpp"
#include "oracles.hpp"

using namespace canonphase;

namespace {

oracles::Grid2 to_grid(const UnitaryMatrix& u) {
  oracles::Grid2 g(u.dim(), std::vector<Complex>(u.dim()));
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j) g[i][j] = u(i, j);
  return g;
}

double max_dev(const MultimodeState& a, const MultimodeState& b) {
  double d = 0.0;
  for (const auto& [p, x] : a.terms()) d = std::max(d, std::abs(x - b.amplitude(p)));
  for (const auto& [p, x] : b.terms()) d = std::max(d, std::abs(x - a.amplitude(p)));
  return d;
}

}  // namespace

TEST(Sector, Enumeration) {
  EXPECT_EQ(enumerate_sector(2, 0), (std::vector<FockPattern>{{0, 0}}));
  EXPECT_EQ(enumerate_sector(2, 2), (std::vector<FockPattern>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(enumerate_sector(4, 3).size(), 20u);
}

TEST(TransitionAmplitude, Identity) {
  const auto id = UnitaryMatrix::identity(3);
  for (const FockPattern& p : {FockPattern{0, 0, 0}, FockPattern{1, 2, 0}, FockPattern{3, 1, 1}})
    EXPECT_NEAR(std::abs(transition_amplitude(id, p, p) - 1.0), 0.0, 1e-15);
}

TEST(TransitionAmplitude, HongOuMandel) {
  const auto u = dft_matrix(2);
  EXPECT_NEAR(std::abs(transition_amplitude(u, {1, 1}, {1, 1})), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(transition_amplitude(u, {1, 1}, {2, 0})), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(transition_amplitude(u, {1, 1}, {0, 2})), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(TransitionAmplitude, MatchesPermanentDefinition) {
  SplitMix64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto u = haar_random_unitary(4, rng());
    const auto g = to_grid(u);
    const auto sector = enumerate_sector(4, 3);
    const auto& in = sector[rng() % sector.size()];
    for (const auto& out : sector)
      EXPECT_NEAR(std::abs(transition_amplitude(u, in, out) -
                           oracles::amplitude(g, in.occupations(), out.occupations())),
                  0.0, 1e-12);
  }
}

TEST(TransitionAmplitude, AdjointRelation) {
  SplitMix64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto u = haar_random_unitary(3, rng());
    const auto sector = enumerate_sector(3, 4);
    const auto& p = sector[rng() % sector.size()];
    const auto& q = sector[rng() % sector.size()];
    EXPECT_NEAR(std::abs(transition_amplitude(u, p, q) -
                         std::conj(transition_amplitude(u.adjoint(), q, p))),
                0.0, 1e-12);
  }
}

TEST(TransitionAmplitude, Errors) {
  const auto u = dft_matrix(2);
  try {
    transition_amplitude(u, {1, 1}, {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PhotonNumberMismatch);
  }
  try {
    transition_amplitude(u, {1, 1, 0}, {1, 1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    transition_amplitude(u, {21, 0}, {0, 21});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

TEST(Evolve, IdentityLeavesStateAlone) {
  SplitMix64 rng(8);
  const auto s = random_multimode_state(3, 4, 5, rng);
  EXPECT_LT(max_dev(evolve(UnitaryMatrix::identity(3), s), s), 1e-15);
  EXPECT_LT(max_dev(brute_force_evolve(UnitaryMatrix::identity(3), s), s), 1e-15);
}

TEST(Evolve, PhaseShiftMultipliesTerms) {
  SplitMix64 rng(12);
  const auto s = random_multimode_state(3, 4, 6, rng);
  const double phi = 0.83;
  const auto out = evolve(phase_shift_matrix(3, 1, phi), s);
  for (const auto& [p, x] : s.terms())
    EXPECT_NEAR(std::abs(out.amplitude(p) - x * std::polar(1.0, p[1] * phi)), 0.0, 1e-14);
}

TEST(Evolve, SinglePhotonFollowsColumn) {
  const auto u = haar_random_unitary(4, 99);
  for (int j = 0; j < 4; ++j) {
    std::vector<int> occ(4, 0);
    occ[j] = 1;
    const auto out = brute_force_evolve(u, MultimodeState::basis(FockPattern(occ)));
    for (int i = 0; i < 4; ++i) {
      std::vector<int> o(4, 0);
      o[i] = 1;
      EXPECT_NEAR(std::abs(out.amplitude(FockPattern(o)) - u(i, j)), 0.0, 1e-15);
    }
  }
}

TEST(Evolve, MatchesBruteForce) {
  const auto s = MultimodeState::basis({1, 1, 0});
  EXPECT_LT(max_dev(evolve(dft_matrix(3), s), brute_force_evolve(dft_matrix(3), s)), 1e-12);

  SplitMix64 rng(100);
  for (int t = 0; t < 100; ++t) {
    const int modes = 2 + static_cast<int>(rng() % 4);
    const int photons = 1 + static_cast<int>(rng() % 5);
    const auto u = haar_random_unitary(modes, rng());
    const auto in = random_multimode_state(modes, photons, 3, rng);
    EXPECT_LT(max_dev(evolve(u, in), brute_force_evolve(u, in)), 1e-10);
  }
}

TEST(Evolve, ConservesSectorsAndInnerProducts) {
  SplitMix64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const int modes = 2 + static_cast<int>(rng() % 4);
    const auto u = haar_random_unitary(modes, rng());
    const auto a = random_multimode_state(modes, 4, 5, rng);
    const auto b = random_multimode_state(modes, 4, 5, rng);
    const auto ea = evolve(u, a);
    const auto eb = evolve(u, b);
    const auto before = a.sector_norms();
    const auto after = ea.sector_norms();
    for (const auto& [n, w] : before) EXPECT_NEAR(after.count(n) ? after.at(n) : 0.0, w, 1e-10);
    EXPECT_NEAR(std::abs(inner_product(ea, eb) - inner_product(a, b)), 0.0, 1e-10);
  }
}

TEST(Evolve, BruteForceCap) {
  try {
    brute_force_evolve(dft_matrix(2), MultimodeState::basis({5, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}
