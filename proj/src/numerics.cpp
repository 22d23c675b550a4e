#include "wpcn/numerics.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace wpcn::numerics {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

double initial_guess(double x) {
  // Branch-point series in p = sqrt(2(e·x + 1)).
  if (x < -0.25) {
    const double p = std::sqrt(std::max(0.0, 2.0 * std::fma(std::numbers::e, x, 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 3.0) {
    // Pade-like rational fit, good to a few percent on [-0.25, 3).
    return x * (1.0 + 4.0 / 3.0 * x) / (1.0 + x * (7.0 / 3.0 + 5.0 / 6.0 * x));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN argument");
  if (x < -kInvE) {
    // Tolerate the rounding of -1/e itself.
    if (x > -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) return -1.0;
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

double z_of(double b) {
  if (!(b >= 0.0)) throw std::domain_error("z_of: b must be non-negative");
  if (b == 0.0) return 1.0;
  if (std::isinf(b)) return b;
  // (b - 1)/W((b - 1)/e) == e·exp(W((b - 1)/e)); the right side has no 0/0 at b = 1.
  return std::exp(1.0 + lambert_w0((b - 1.0) * kInvE));
}

double z_of_by_root(double b) {
  if (!(b >= 0.0)) throw std::domain_error("z_of_by_root: b must be non-negative");
  if (b == 0.0) return 1.0;
  const auto h = [b](double z) { return z * (std::log(z) - 1.0) - (b - 1.0); };
  double hi = std::max(2.0 * std::numbers::e, b);
  while (h(hi) <= 0.0) hi *= 2.0;
  return solve_monotone_root(h, RootBracket{1.0, hi, 0.0, 1e-15, 400});
}

double solve_monotone_root(const std::function<double(double)>& f, const RootBracket& bracket) {
  if (!(bracket.lo < bracket.hi)) throw RootError("solve_monotone_root: empty bracket");
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi))
    throw RootError("solve_monotone_root: no sign change on bracket");

  const auto done = [&](double a, double b) {
    return std::abs(b - a) <= bracket.tol_abs + bracket.tol_rel * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(bracket.max_iter);
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, flo, fhi, done, iters);
  if (iters >= static_cast<std::uintmax_t>(bracket.max_iter) && !done(a, b))
    throw RootError("solve_monotone_root: iteration limit reached");
  return 0.5 * (a + b);
}

}  // namespace wpcn::numerics
