#include "canonphase/fock.hpp"

#include <cmath>
#include <numeric>

#include "canonphase/error.hpp"
#include "canonphase/permanent.hpp"

namespace canonphase {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_same_modes(const UnitaryMatrix& u, int modes) {
  if (u.dim() != modes)
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(modes) +
                                                  " modes but the network has " +
                                                  std::to_string(u.dim()));
}

// Caller guarantees matching lengths and totals.
Complex amplitude_unchecked(const ComplexMatrix& u, const FockPattern& in, const FockPattern& out) {
  const int n = in.total();
  if (n == 0) return {1.0, 0.0};
  const int modes = in.modes();

  double cost_in = 1.0, cost_out = 1.0;
  for (int k = 0; k < modes; ++k) {
    cost_in *= in[k] + 1;
    cost_out *= out[k] + 1;
  }

  // Group the side with the smaller grouped-Ryser cost, expand the other.
  const bool group_input = cost_in <= cost_out;
  const FockPattern& grouped = group_input ? in : out;
  const FockPattern& expanded = group_input ? out : in;
  ComplexMatrix sub(n, modes);
  int r = 0;
  for (int k = 0; k < modes; ++k) {
    for (int rep = 0; rep < expanded[k]; ++rep, ++r) {
      for (int c = 0; c < modes; ++c) sub(r, c) = group_input ? u(k, c) : u(c, k);
    }
  }
  const Complex per = permanent_repeated_columns(sub, grouped.occupations());
  return per / std::sqrt(in.factorial_product() * out.factorial_product());
}

}  // namespace

FockPattern::FockPattern(std::vector<int> occupations) : occ_(std::move(occupations)) {
  for (int n : occ_)
    if (n < 0) throw Error(ErrorKind::InvalidState, "negative photon number in pattern");
}

int FockPattern::total() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }

double FockPattern::factorial_product() const {
  double p = 1.0;
  for (int n : occ_) p *= factorial(n);
  return p;
}

std::string FockPattern::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < occ_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(occ_[k]);
  }
  return s + ")";
}

MultimodeState::MultimodeState(int modes) : modes_(modes) {
  if (modes < 1) throw Error(ErrorKind::InvalidDimension, "state needs at least one mode");
}

MultimodeState MultimodeState::basis(const FockPattern& pattern) {
  MultimodeState s(pattern.modes());
  s.add(pattern, 1.0);
  return s;
}

void MultimodeState::add(const FockPattern& pattern, Complex amplitude) {
  if (pattern.modes() != modes_)
    throw Error(ErrorKind::DimensionMismatch, "pattern " + pattern.to_string() + " does not have " +
                                                  std::to_string(modes_) + " modes");
  terms_[pattern] += amplitude;
}

Complex MultimodeState::amplitude(const FockPattern& pattern) const {
  auto it = terms_.find(pattern);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double MultimodeState::norm_squared() const {
  double s = 0.0;
  for (const auto& [p, a] : terms_) s += std::norm(a);
  return s;
}

std::map<int, double> MultimodeState::sector_norms() const {
  std::map<int, double> out;
  for (const auto& [p, a] : terms_) out[p.total()] += std::norm(a);
  return out;
}

int MultimodeState::max_total() const {
  int m = 0;
  for (const auto& [p, a] : terms_) m = std::max(m, p.total());
  return m;
}

MultimodeState MultimodeState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw Error(ErrorKind::InvalidState, "cannot normalize the zero state");
  MultimodeState s(modes_);
  for (const auto& [p, a] : terms_) s.terms_.emplace(p, a / n);
  return s;
}

Complex inner_product(const MultimodeState& a, const MultimodeState& b) {
  Complex s(0.0, 0.0);
  for (const auto& [p, amp] : a.terms()) s += std::conj(amp) * b.amplitude(p);
  return s;
}

std::vector<FockPattern> enumerate_sector(int modes, int total) {
  if (modes < 1) throw Error(ErrorKind::InvalidDimension, "sector needs at least one mode");
  if (total < 0) throw Error(ErrorKind::InvalidState, "negative photon total");
  std::vector<FockPattern> out;
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  // Lexicographic walk: the leading modes take the smallest counts first and
  // the last mode absorbs what is left.
  auto rec = [&](auto&& self, int mode, int left) -> void {
    if (mode == modes - 1) {
      occ[mode] = left;
      out.emplace_back(occ);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      occ[mode] = k;
      self(self, mode + 1, left - k);
    }
  };
  rec(rec, 0, total);
  return out;
}

Complex transition_amplitude(const UnitaryMatrix& u, const FockPattern& input,
                             const FockPattern& output) {
  require_same_modes(u, input.modes());
  require_same_modes(u, output.modes());
  const int n = input.total();
  if (n != output.total())
    throw Error(ErrorKind::PhotonNumberMismatch,
                "photon number is conserved: input has " + std::to_string(n) +
                    " photons, output has " + std::to_string(output.total()));
  if (n > kMaxEvolvePhotons)
    throw Error(ErrorKind::SizeLimit, std::to_string(n) + " photons exceed the limit of " +
                                          std::to_string(kMaxEvolvePhotons));
  return amplitude_unchecked(u.matrix(), input, output);
}

MultimodeState evolve(const UnitaryMatrix& u, const MultimodeState& state) {
  require_same_modes(u, state.modes());
  if (state.max_total() > kMaxEvolvePhotons)
    throw Error(ErrorKind::SizeLimit, "state has a sector above the limit of " +
                                          std::to_string(kMaxEvolvePhotons) + " photons");
  std::map<int, std::vector<std::pair<FockPattern, Complex>>> sectors;
  for (const auto& [p, a] : state.terms()) sectors[p.total()].emplace_back(p, a);

  MultimodeState out(state.modes());
  for (const auto& [total, inputs] : sectors) {
    for (const auto& q : enumerate_sector(state.modes(), total)) {
      Complex amp(0.0, 0.0);
      for (const auto& [p, a] : inputs) amp += a * amplitude_unchecked(u.matrix(), p, q);
      if (std::abs(amp) >= kPruneThreshold) out.add(q, amp);
    }
  }
  return out;
}

MultimodeState brute_force_evolve(const UnitaryMatrix& u, const MultimodeState& state) {
  require_same_modes(u, state.modes());
  if (state.max_total() > kMaxBruteForcePhotons)
    throw Error(ErrorKind::SizeLimit, "brute-force evolution is limited to " +
                                          std::to_string(kMaxBruteForcePhotons) + " photons");
  const int modes = state.modes();
  const ComplexMatrix& m = u.matrix();

  std::map<std::vector<int>, Complex> acc;
  for (const auto& [p, c] : state.terms()) {
    // Polynomial in the output creation operators, keyed by exponent vector.
    std::map<std::vector<int>, Complex> poly;
    poly[std::vector<int>(static_cast<std::size_t>(modes), 0)] = 1.0;
    for (int j = 0; j < modes; ++j) {
      for (int rep = 0; rep < p[j]; ++rep) {
        std::map<std::vector<int>, Complex> next;
        for (const auto& [mono, coef] : poly) {
          for (int i = 0; i < modes; ++i) {
            if (m(i, j) == Complex(0.0, 0.0)) continue;
            auto grown = mono;
            ++grown[i];
            next[grown] += coef * m(i, j);
          }
        }
        poly = std::move(next);
      }
    }
    // (a^dagger)^n |0> = sqrt(n!) |n>, and the input carries 1/sqrt(prod p!).
    const Complex scale = c / std::sqrt(p.factorial_product());
    for (const auto& [mono, coef] : poly) {
      double fact = 1.0;
      for (int n : mono)
        for (int k = 2; k <= n; ++k) fact *= k;
      acc[mono] += scale * coef * std::sqrt(fact);
    }
  }

  MultimodeState out(modes);
  for (const auto& [mono, amp] : acc)
    if (std::abs(amp) >= kPruneThreshold) out.add(FockPattern(mono), amp);
  return out;
}

}  // namespace canonphase
