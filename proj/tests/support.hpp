#pragma once

#include "wpcn/allocator.hpp"
#include "wpcn/rng.hpp"

#include <cmath>
#include <vector>

namespace wpcn::test {

// K = 1 with N0 = 1: N0·eta·x^2 = 2, P_H·x = 1, threshold 0.5.
struct WorkedInstance {
  std::vector<EhuProfile> profiles{EhuProfile{0.5, 0.5, 10.0}};
  std::vector<double> x{2.0};
  double n0 = 1.0;
  double lambda = 1.0;

  EpochChannel epoch() const { return make_epoch(x, profiles, n0); }
};

// Reference values computed at 40 digits outside this code base.
inline constexpr double kWorkedC = 1.6487212707001281468;
inline constexpr double kWorkedRho = 0.17563936464993592658;
inline constexpr double kWorkedTau0 = 0.39346934028736657640;
inline constexpr double kWorkedTau1 = 0.60653065971263342360;
inline constexpr double kWorkedRate = 0.30326532985631671180;

// Random epoch in the regime of the simulations (N0 = 1e-10).
struct RandomEpoch {
  std::vector<EhuProfile> profiles;
  std::vector<double> x;
  double n0 = 1e-10;
  EpochChannel epoch() const { return make_epoch(x, profiles, n0); }
  double a0() const { return epoch().a_tail[0]; }
};

inline RandomEpoch random_epoch(std::uint64_t seed, std::uint64_t index, int k) {
  rng::Stream s(seed, index);
  RandomEpoch r;
  for (int u = 0; u < k; ++u) {
    r.profiles.push_back(EhuProfile{s.uniform(0.1, 0.6), std::pow(10.0, s.uniform(-6.0, -4.0)), 10.0});
    r.x.push_back(std::pow(10.0, s.uniform(-8.0, -5.0)) / r.n0);
  }
  return r;
}

inline double sum(const std::vector<double>& v) {
  double t = 0.0;
  for (double x : v) t += x;
  return t;
}

}  // namespace wpcn::test
