#include "wpcn/kernels.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/rng.hpp"
#include "wpcn/simulator.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstring>
#include <numeric>

using namespace wpcn;
using kernels::Exec;

namespace {

// Bitwise comparison, so that -0.0 vs 0.0 or NaN payloads would be caught too.
bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bits_equal(a[i], b[i])) return false;
  return true;
}

bool bits_equal(const EpochAllocation& a, const EpochAllocation& b) {
  return bits_equal(a.p0, b.p0) && bits_equal(a.tau0, b.tau0) && bits_equal(a.tau, b.tau) &&
         bits_equal(a.c_const, b.c_const) && a.regime == b.regime && a.s_star == b.s_star;
}

struct Fixture {
  std::vector<EhuProfile> profiles = std::vector<EhuProfile>(5, EhuProfile{0.2, 9.2e-6, 10.0});
  FadingSpec spec = FadingSpec::from_profiles(profiles, 77, 3001);
  NetworkConfig cfg = [] {
    NetworkConfig c;
    c.k_users = 5;
    c.p_avg = 2.0;
    c.p_max = 30.0;
    return c;
  }();
};

class ThreadCap {
 public:
  explicit ThreadCap(int n) : saved_(kernels::thread_cap()) { kernels::set_thread_cap(n); }
  ~ThreadCap() { kernels::set_thread_cap(saved_); }

 private:
  int saved_;
};

}  // namespace

TEST_CASE("pairwise_sum") {
  CHECK(kernels::pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(kernels::pairwise_sum(std::vector<double>{3.5}) == 3.5);
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(kernels::pairwise_sum(v) == 500500.0);
  // Far better than naive summation on a cancellation-prone series.
  std::vector<double> w(1 << 20, 0.1);
  CHECK(std::abs(kernels::pairwise_sum(w) - 104857.6) < 1e-8);
}

TEST_CASE("counter-based RNG is a pure function of its coordinates") {
  CHECK(rng::draw(1, 2, 3) == rng::draw(1, 2, 3));
  CHECK(rng::draw(1, 2, 3) != rng::draw(1, 2, 4));
  CHECK(rng::draw(1, 2, 3) != rng::draw(1, 3, 3));
  CHECK(rng::draw(1, 2, 3) != rng::draw(2, 2, 3));
  rng::Stream s(9, 4);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(u == rng::uniform_open(rng::draw(9, 4, i)));
  }
  CHECK(rng::uniform_open(0) > 0.0);
  CHECK(rng::uniform_open(~0ULL) < 1.0);
}

TEST_CASE("serial and parallel kernels are bitwise identical for every thread count") {
  const Fixture f;
  const auto ref_channels = generate_epochs(f.spec, f.cfg.n0, Exec::serial);
  const auto ref_batch = prepare_epochs(ref_channels, f.profiles, f.cfg.n0, Exec::serial);
  const double lambda = 0.05 * ref_batch[0].a_tail[0];

  for (Scheme scheme : {Scheme::theorem1, Scheme::theorem2, Scheme::baseline1, Scheme::baseline2}) {
    const auto ref_alloc = kernels::allocate_batch(scheme, ref_batch, lambda, f.cfg, Exec::serial);
    const auto ref_cons = kernels::epoch_consumption(scheme, ref_batch, lambda, f.cfg, Exec::serial);
    const double ref_mean = kernels::mean_consumption(scheme, ref_batch, lambda, f.cfg, Exec::serial);
    const std::vector<EhCurve> truth{LogisticCurve::preset()};
    const auto ref_rates = kernels::average_rates(ref_alloc, ref_batch, truth, f.cfg.n0, Exec::serial);

    for (int threads : {1, 2, 3, 8}) {
      CAPTURE(threads);
      CAPTURE(to_string(scheme));
      const ThreadCap cap(threads);
      const auto channels = generate_epochs(f.spec, f.cfg.n0, Exec::parallel);
      REQUIRE(bits_equal(channels.x, ref_channels.x));
      const auto batch = prepare_epochs(channels, f.profiles, f.cfg.n0, Exec::parallel);
      const auto alloc = kernels::allocate_batch(scheme, batch, lambda, f.cfg, Exec::parallel);
      REQUIRE(alloc.size() == ref_alloc.size());
      for (std::size_t i = 0; i < alloc.size(); ++i) REQUIRE(bits_equal(alloc[i], ref_alloc[i]));
      CHECK(bits_equal(kernels::epoch_consumption(scheme, batch, lambda, f.cfg, Exec::parallel), ref_cons));
      CHECK(bits_equal(kernels::mean_consumption(scheme, batch, lambda, f.cfg, Exec::parallel), ref_mean));
      const auto rates = kernels::average_rates(alloc, batch, truth, f.cfg.n0, Exec::parallel);
      CHECK(bits_equal(rates.sum_rate, ref_rates.sum_rate));
      CHECK(bits_equal(rates.sum_rate_std_error, ref_rates.sum_rate_std_error));
      CHECK(bits_equal(rates.per_user, ref_rates.per_user));
    }
  }
}

TEST_CASE("the lambda search and the oracle do not depend on the thread count") {
  const Fixture f;
  const auto batch = prepare_epochs(generate_epochs(f.spec, f.cfg.n0), f.profiles, f.cfg.n0);
  const auto ref = find_lambda(batch, f.cfg, Scheme::theorem2, Exec::serial);
  const auto cases = oracle::certification_cases(5, 8);
  std::vector<oracle::Certificate> ref_certs;
  oracle::CertifyOptions opts;
  opts.grid = {96, 96};
  for (const auto& c : cases) ref_certs.push_back(oracle::certify(c, opts, Exec::serial));

  for (int threads : {1, 4}) {
    const ThreadCap cap(threads);
    const auto s = find_lambda(batch, f.cfg, Scheme::theorem2, Exec::parallel);
    CHECK(bits_equal(s.lambda, ref.lambda));
    CHECK(bits_equal(s.consumption, ref.consumption));
    CHECK(s.trace == ref.trace);
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto c = oracle::certify(cases[i], opts, Exec::parallel);
      CHECK(bits_equal(c.report.best_objective, ref_certs[i].report.best_objective));
      CHECK(bits_equal(c.report.best_p0, ref_certs[i].report.best_p0));
      CHECK(bits_equal(c.report.best_tau0, ref_certs[i].report.best_tau0));
    }
  }
}

TEST_CASE("errors inside a parallel region reach the caller") {
  const Fixture f;
  auto batch = prepare_epochs(generate_epochs(f.spec, f.cfg.n0), f.profiles, f.cfg.n0);
  const ThreadCap cap(4);
  CHECK_THROWS_AS(kernels::allocate_batch(Scheme::theorem1, batch, -1.0, f.cfg), AllocationError);
  NetworkConfig no_peak = f.cfg;
  no_peak.p_max.reset();
  CHECK_THROWS_AS(kernels::allocate_batch(Scheme::baseline2, batch, 0.0, no_peak), AllocationError);
}
