#include "wpcn/dual.hpp"
#include "wpcn/simulator.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace wpcn;

namespace {

std::vector<EpochChannel> fading_batch(int k, std::size_t epochs, std::uint64_t seed) {
  const std::vector<EhuProfile> profiles(static_cast<std::size_t>(k), EhuProfile{0.2, 9.2e-6, 10.0});
  const auto spec = FadingSpec::from_profiles(profiles, seed, epochs);
  return prepare_epochs(generate_epochs(spec, 1e-10), profiles, 1e-10);
}

NetworkConfig network(int k, double p_avg, std::optional<double> p_max) {
  NetworkConfig c;
  c.k_users = k;
  c.p_avg = p_avg;
  c.p_max = p_max;
  return c;
}

}  // namespace

TEST_CASE("inverse consistency on the worked instance") {
  const test::WorkedInstance w;
  const std::vector<EpochChannel> batch{w.epoch()};
  NetworkConfig cfg = network(1, 0.5 * test::kWorkedTau0, std::nullopt);
  cfg.n0 = w.n0;
  const auto s = find_lambda(batch, cfg, Scheme::theorem1);
  CHECK(s.constraint_active);
  CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.lambda_lo <= s.lambda);
  CHECK(s.consumption <= cfg.p_avg);
  CHECK(s.consumption == doctest::Approx(cfg.p_avg).epsilon(1e-6));
}

TEST_CASE("a budget above the unconstrained consumption leaves lambda at zero") {
  const auto batch = fading_batch(3, 200, 5);
  const auto cfg = network(3, 1e6, std::nullopt);
  const auto s = find_lambda(batch, cfg, Scheme::theorem1);
  CHECK(s.lambda == 0.0);
  CHECK_FALSE(s.constraint_active);
  CHECK(s.consumption <= cfg.p_avg);
  CHECK(s.consumption > 0.0);
  CHECK(s.trace.size() == 1);
}

TEST_CASE("a vanishing budget pushes lambda to the largest A_0") {
  const auto batch = fading_batch(2, 100, 6);
  double a_max = 0.0;
  for (const auto& e : batch) a_max = std::max(a_max, e.a_tail[0]);
  const auto s = find_lambda(batch, network(2, 1e-12, std::nullopt), Scheme::theorem1);
  CHECK(s.constraint_active);
  CHECK(s.lambda <= a_max);
  CHECK(s.lambda >= a_max * (1.0 - 1e-3));
  CHECK(s.consumption <= 1e-12);
}

TEST_CASE("consumption is non-increasing along the bisection trace") {
  const auto batch = fading_batch(5, 2000, 7);
  for (Scheme scheme : {Scheme::theorem1, Scheme::theorem2, Scheme::baseline1}) {
    for (double p_avg : {0.5, 2.0, 3.0}) {
      CAPTURE(to_string(scheme));
      CAPTURE(p_avg);
      auto trace = find_lambda(batch, network(5, p_avg, 15.0 * p_avg), scheme).trace;
      std::sort(trace.begin(), trace.end());
      for (std::size_t i = 1; i < trace.size(); ++i) REQUIRE(trace[i].second <= trace[i - 1].second);
    }
  }
}

TEST_CASE("budgeted allocation meets the budget with equality") {
  const auto batch = fading_batch(5, 3000, 8);
  for (Scheme scheme : {Scheme::theorem1, Scheme::theorem2, Scheme::baseline1}) {
    for (double p_avg : {0.25, 1.0, 3.0}) {
      CAPTURE(to_string(scheme));
      CAPTURE(p_avg);
      const auto cfg = network(5, p_avg, 15.0 * p_avg);
      const auto b = allocate_with_budget(batch, cfg, scheme);
      if (!b.search.constraint_active) continue;
      CHECK(b.consumption == doctest::Approx(p_avg).epsilon(1e-9));
      CHECK(b.allocations.size() == batch.size());
      std::size_t shared = 0;
      for (const auto& a : b.allocations) {
        shared += a.time_shared;
        if (a.active()) CHECK(a.tau0 + test::sum(a.tau) == doctest::Approx(1.0).epsilon(1e-12));
        if (scheme != Scheme::theorem1) CHECK(a.p0 <= 15.0 * p_avg * (1.0 + 1e-15));
      }
      CHECK(shared <= b.time_shared_epochs);
    }
  }
}

TEST_CASE("baseline 2 needs no search") {
  const auto batch = fading_batch(3, 100, 9);
  const auto cfg = network(3, 1.0, 10.0);
  const auto s = find_lambda(batch, cfg, Scheme::baseline2);
  CHECK(s.lambda == 0.0);
  CHECK(s.trace.empty());
  CHECK(s.consumption == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(find_lambda(std::span<const EpochChannel>{}, cfg, Scheme::theorem2), AllocationError);
}
