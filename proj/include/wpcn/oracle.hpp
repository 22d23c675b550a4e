#pragma once

// Brute-force certification of single-epoch allocations. The oracle works on
// the per-epoch Lagrangian
//   sum_k tau_k ln(1 + E_k x_k / tau_k) - lambda·p0·tau0
// with E_k from the piecewise-linear model, and never calls the closed-form
// allocation rules.

#include "wpcn/allocator.hpp"
#include "wpcn/kernels.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wpcn::oracle {

struct InnerSplit {
  std::vector<double> tau;
  double sum_rate = 0.0;
};

/// Best split of an information-transfer budget among users holding
/// harvested energies E_k: shares proportional to E_k·x_k.
InnerSplit inner_split(std::span<const double> harvested, std::span<const double> x, double it_budget);

struct GridSpec {
  int p0_points = 512;    // p0 = cap·j/p0_points, j = 0..p0_points
  int tau0_points = 512;  // tau0 = i/tau0_points, i = 0..tau0_points-1
  // Rescan p0 at the same resolution within one coarse cell of the argmax.
  bool zoom = false;
};

struct OracleReport {
  double best_objective = 0.0;
  double theorem_objective = 0.0;
  double gap = 0.0;  // best - theorem; <= 0 when the closed form wins
  GridSpec grid;
  double best_p0 = 0.0;
  double best_tau0 = 0.0;
  double p0_cap = 0.0;
  std::map<std::string, double> kkt_residuals;

  /// gap scaled by the larger objective magnitude (0 when both vanish).
  double relative_gap() const;
};

/// Per-epoch Lagrangian value of an allocation under the piecewise model.
double lagrangian_objective(const EpochAllocation& alloc, std::span<const double> x,
                            std::span<const EhuProfile> profiles, double n0, double lambda);

/// Exhaustive search over the (p0, tau0) grid with the analytic inner split.
/// `p_max` caps the p0 axis; without it the axis spans [0, 2·max threshold].
OracleReport epoch_grid_search(std::span<const double> x, std::span<const EhuProfile> profiles, double n0,
                               const EpochAllocation& theorem, double lambda, std::optional<double> p_max,
                               GridSpec grid,
                               kernels::Exec exec = kernels::Exec::parallel);

/// Stationarity, multiplier and dual-feasibility residuals of an active
/// allocation, all relative. Peak-clipped allocations get the extra
/// multiplier of the peak constraint. Keys: equal_snr, stationarity_tau,
/// multiplier_recovery, dual_feasibility, rho_range, share_closure.
std::map<std::string, double> kkt_residuals(const EpochAllocation& alloc, const EpochChannel& epoch, double lambda);

double max_residual(const std::map<std::string, double>& residuals);

/// A random single-epoch instance for certification runs.
struct CertCase {
  std::vector<EhuProfile> profiles;
  std::vector<double> x;
  double n0 = 1e-10;
  double lambda = 0.0;
  std::optional<double> p_max;
};

/// Deterministic instances; K cycles through {1, 2, 3, 5}.
std::vector<CertCase> certification_cases(std::uint64_t seed, int samples);

struct CertifyOptions {
  GridSpec grid;
  double gap_tolerance = 1e-3;       // relative
  double residual_tolerance = 1e-6;  // relative
  double corrupt_tau0 = 0.0;         // negative control: scale tau0 by (1 + corrupt_tau0)
};

struct Certificate {
  OracleReport report;
  EpochAllocation allocation;
  bool active = false;
  bool passed = false;
};

Certificate certify(const CertCase& c, const CertifyOptions& options, kernels::Exec exec = kernels::Exec::parallel);

/// Scales tau0 by (1 + factor) and renormalises the user shares so the epoch
/// still sums to one.
EpochAllocation perturb_tau0(const EpochAllocation& alloc, double factor);

}  // namespace wpcn::oracle
