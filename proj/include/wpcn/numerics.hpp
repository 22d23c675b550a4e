#pragma once

#include <functional>
#include <stdexcept>

namespace wpcn::numerics {

/// Thrown when a bracketing solver cannot start or cannot finish.
class RootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootBracket {
  double lo = 0.0;
  double hi = 1.0;
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  int max_iter = 200;
};

/// Principal branch of the Lambert-W function, W(x)·exp(W(x)) = x for
/// x >= -1/e. Halley iteration from a piecewise initial guess.
/// Throws std::domain_error below the branch point.
double lambert_w0(double x);

/// Unique z >= 1 with z·(ln z - 1) = b - 1, i.e. the root of
/// ln z - (z - 1)/z = b/z. Evaluated as exp(1 + W0((b - 1)/e)), which is
/// exactly 1 at b = 0 and +inf for b = +inf.
double z_of(double b);

/// Same root as z_of, found by bracketing on z·(ln z - 1) - (b - 1).
/// Kept as an independent route for cross-checks.
double z_of_by_root(double b);

/// Root of a continuous function that changes sign on [lo, hi].
/// Stops when |f(x)| == 0 or the bracket width falls below
/// tol_abs + tol_rel·|x|. Deterministic for a fixed build.
double solve_monotone_root(const std::function<double(double)>& f, const RootBracket& bracket);

}  // namespace wpcn::numerics
