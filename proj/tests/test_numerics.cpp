#include "wpcn/numerics.hpp"

#include <boost/math/special_functions/lambert_w.hpp>
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

using namespace wpcn::numerics;

namespace {

const double kE = std::exp(1.0);

// Plain bisection on z(ln z - 1) = b - 1 over z >= 1, deliberately unrelated
// to the library's root finders.
double z_bisect(double b) {
  if (b == 0.0) return 1.0;  // double root at z = 1, out of reach for a sign test
  double lo = 1.0;
  double hi = std::max(4.0, 2.0 * b + 4.0);
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * (std::log(mid) - 1.0) - (b - 1.0) > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("lambert_w0 examples") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(kE) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-1.0 / kE) == doctest::Approx(-1.0).epsilon(1e-7));
  // Omega constant, Newton iteration at 40 digits.
  CHECK(lambert_w0(1.0) == doctest::Approx(0.56714329040978387300).epsilon(1e-14));
}

TEST_CASE("lambert_w0 rejects arguments below the branch point") {
  CHECK_THROWS_AS(lambert_w0(-1.0 / kE - 1e-6), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(-1.0), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("lambert_w0 inverse identity on a dense grid") {
  const auto start = std::chrono::steady_clock::now();
  const double lo = -1.0 / kE;
  int n = 0;
  // Dense near the branch point, then log-spaced up to 700.
  for (int i = 0; i <= 20000; ++i) {
    const double x = lo + (1.0 - lo) * i / 20000.0;
    const double w = lambert_w0(x);
    REQUIRE(w >= -1.0);
    REQUIRE(std::abs(w * std::exp(w) - x) <= 1e-10 * std::max(1.0, std::abs(x)));
    ++n;
  }
  for (int i = 0; i <= 20000; ++i) {
    const double x = std::pow(10.0, std::log10(700.0) * i / 20000.0);
    const double w = lambert_w0(x);
    REQUIRE(std::abs(w * std::exp(w) - x) <= 1e-10 * std::max(1.0, x));
    ++n;
  }
  CHECK(n == 40002);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
}

TEST_CASE("lambert_w0 agrees with an independent implementation") {
  for (int i = 0; i <= 5000; ++i) {
    const double x = -1.0 / kE + 1e-9 + (1e6) * std::pow(i / 5000.0, 4.0);
    const double ref = boost::math::lambert_w0(x);
    CHECK(lambert_w0(x) == doctest::Approx(ref).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("z_of examples") {
  CHECK(z_of(0.0) == 1.0);
  CHECK(z_of(1.0) == doctest::Approx(kE).epsilon(1e-13));
  // Bisection at 40 digits: z(ln z - 1) = 1.
  CHECK(z_of(2.0) == doctest::Approx(3.5911214766686221366).epsilon(1e-13));
  CHECK(z_of(2.0) == doctest::Approx(z_bisect(2.0)).epsilon(1e-13));
  CHECK(std::isinf(z_of(std::numeric_limits<double>::infinity())));
}

TEST_CASE("z_of invariants on a dense grid") {
  const auto start = std::chrono::steady_clock::now();
  double prev = 0.0;
  double prev_b = -1.0;
  for (int i = 0; i <= 40000; ++i) {
    // Linear through [0, 10], log-spaced from 10 to 1e6.
    const double b = i <= 10000 ? 10.0 * i / 10000.0 : std::pow(10.0, 1.0 + 5.0 * (i - 10000) / 30000.0);
    const double z = z_of(b);
    REQUIRE(z >= 1.0);
    if (b > prev_b && i > 0) REQUIRE(z > prev);
    REQUIRE(std::abs(z * (std::log(z) - 1.0) - (b - 1.0)) <= 1e-8 * std::max(1.0, b));
    prev = z;
    prev_b = b;
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
}

TEST_CASE("z_of closed form and root-finding route agree") {
  for (int i = 0; i <= 2000; ++i) {
    const double b = i <= 1000 ? 10.0 * i / 1000.0 : std::pow(10.0, 1.0 + 5.0 * (i - 1000) / 1000.0);
    const double a = z_of(b);
    const double r = z_of_by_root(b);
    REQUIRE(std::abs(a - r) <= 1e-8 * a);
    REQUIRE(std::abs(a - z_bisect(b)) <= 1e-8 * a);
  }
}

TEST_CASE("solve_monotone_root examples") {
  CHECK(solve_monotone_root([](double x) { return x - 2.0; }, {0.0, 10.0}) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(solve_monotone_root([](double x) { return std::log(x) - 0.5; }, {1.0, 10.0}) ==
        doctest::Approx(std::exp(0.5)).epsilon(1e-10));
  CHECK(solve_monotone_root([](double x) { return x * std::exp(x) - 1.0; }, {0.0, 1.0}) ==
        doctest::Approx(0.56714329040978387300).epsilon(1e-10));
  // Decreasing functions work as well.
  CHECK(solve_monotone_root([](double x) { return 3.0 - x; }, {0.0, 10.0}) == doctest::Approx(3.0).epsilon(1e-10));
  // Endpoint roots are returned directly.
  CHECK(solve_monotone_root([](double x) { return x; }, {0.0, 1.0}) == 0.0);
}

TEST_CASE("solve_monotone_root errors") {
  CHECK_THROWS_AS(solve_monotone_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}), RootError);
  CHECK_THROWS_AS(solve_monotone_root([](double x) { return x; }, {1.0, -1.0}), RootError);
  RootBracket tight{0.0, 1.0, 1e-300, 0.0, 2};
  CHECK_THROWS_AS(solve_monotone_root([](double x) { return std::exp(x) - 1.5; }, tight), RootError);
}

TEST_CASE("solve_monotone_root is deterministic") {
  const auto f = [](double x) { return std::log(x) - (x - 1.0) / x + 0.2 - 4.0 / x; };
  const double first = solve_monotone_root(f, {1.0, 20.0});
  for (int i = 0; i < 100; ++i) REQUIRE(solve_monotone_root(f, {1.0, 20.0}) == first);
}
