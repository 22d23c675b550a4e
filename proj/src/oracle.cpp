#include "wpcn/oracle.hpp"

#include "wpcn/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wpcn::oracle {

namespace {

struct Cell {
  double value = -std::numeric_limits<double>::infinity();
  int column = 0;
  int row = 0;
};

// Total E_k·x_k per unit tau0 at BS power p0.
double harvest_load(std::span<const double> x, std::span<const EhuProfile> profiles, double n0, double p0) {
  double load = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) load += harvested_energy(profiles[k], x[k], n0, p0, 1.0) * x[k];
  return load;
}

Cell best_in_column(double load, double p0, double lambda, int rows) {
  Cell best;
  for (int i = 0; i < rows; ++i) {
    const double tau0 = static_cast<double>(i) / rows;
    const double budget = 1.0 - tau0;
    const double total = load * tau0;
    const double rate = total > 0.0 ? budget * std::log1p(total / budget) : 0.0;
    const double value = rate - lambda * p0 * tau0;
    if (value > best.value) best = Cell{value, 0, i};
  }
  return best;
}

}  // namespace

InnerSplit inner_split(std::span<const double> harvested, std::span<const double> x, double it_budget) {
  InnerSplit out;
  out.tau.assign(harvested.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < harvested.size(); ++k) total += harvested[k] * x[k];
  if (!(total > 0.0) || !(it_budget > 0.0)) return out;
  for (std::size_t k = 0; k < harvested.size(); ++k) out.tau[k] = it_budget * harvested[k] * x[k] / total;
  out.sum_rate = it_budget * std::log1p(total / it_budget);
  return out;
}

double OracleReport::relative_gap() const {
  const double scale = std::max(std::abs(best_objective), std::abs(theorem_objective));
  return scale > 0.0 ? gap / scale : 0.0;
}

double lagrangian_objective(const EpochAllocation& alloc, std::span<const double> x,
                            std::span<const EhuProfile> profiles, double n0, double lambda) {
  if (!alloc.active()) return 0.0;
  double value = -lambda * alloc.p0 * alloc.tau0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double tau = alloc.tau[k];
    if (!(tau > 0.0)) continue;
    const double e = harvested_energy(profiles[k], x[k], n0, alloc.p0, alloc.tau0);
    value += tau * std::log1p(e * x[k] / tau);
  }
  return value;
}

OracleReport epoch_grid_search(std::span<const double> x, std::span<const EhuProfile> profiles, double n0,
                               const EpochAllocation& theorem, double lambda, std::optional<double> p_max,
                               GridSpec grid, kernels::Exec exec) {
  if (grid.p0_points < 1 || grid.tau0_points < 1) throw std::invalid_argument("grid: resolution must be positive");
  OracleReport report;
  report.grid = grid;
  // An infinite peak means no peak: the grid must stay finite.
  if (p_max && std::isfinite(*p_max)) {
    report.p0_cap = *p_max;
  } else {
    double max_threshold = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
      max_threshold = std::max(max_threshold, profiles[k].p_sat / (n0 * profiles[k].eta * x[k]));
    report.p0_cap = 2.0 * max_threshold;
  }

  // Scans p0 = lo + (hi - lo)·j/p0_points for j = 0..p0_points.
  const auto scan = [&](double lo, double hi) {
    const int columns = grid.p0_points + 1;
    std::vector<Cell> best(static_cast<std::size_t>(columns));
    const auto column = [&](int j) {
      const double p0 = lo + (hi - lo) * j / grid.p0_points;
      Cell c = best_in_column(harvest_load(x, profiles, n0, p0), p0, lambda, grid.tau0_points);
      c.column = j;
      best[static_cast<std::size_t>(j)] = c;
    };
    if (exec == kernels::Exec::serial) {
      for (int j = 0; j < columns; ++j) column(j);
    } else {
      const int cap = kernels::thread_cap();
#pragma omp parallel for schedule(static) num_threads(cap > 0 ? cap : omp_get_max_threads())
      for (int j = 0; j < columns; ++j) column(j);
    }
    // Strict comparison in index order: ties go to the lowest cell.
    Cell winner = best[0];
    for (const auto& c : best)
      if (c.value > winner.value) winner = c;
    if (!std::isfinite(winner.value)) throw std::domain_error("grid search: non-finite objective");
    return std::pair{winner, lo + (hi - lo) * winner.column / grid.p0_points};
  };

  auto [winner, best_p0] = scan(0.0, report.p0_cap);
  if (grid.zoom) {
    // Second pass at the same resolution over the two cells around the coarse argmax.
    const double h = report.p0_cap / grid.p0_points;
    const auto [fine, fine_p0] = scan(std::max(0.0, best_p0 - h), std::min(report.p0_cap, best_p0 + h));
    if (fine.value > winner.value) {
      winner = fine;
      best_p0 = fine_p0;
    }
  }

  report.best_objective = winner.value;
  report.best_p0 = best_p0;
  report.best_tau0 = static_cast<double>(winner.row) / grid.tau0_points;
  report.theorem_objective = lagrangian_objective(theorem, x, profiles, n0, lambda);
  report.gap = report.best_objective - report.theorem_objective;
  return report;
}

std::map<std::string, double> kkt_residuals(const EpochAllocation& alloc, const EpochChannel& epoch, double lambda) {
  if (!alloc.active()) throw std::invalid_argument("kkt_residuals: allocation is idle");
  const double c = alloc.c_const;
  const double rho = alloc.rho.value_or(0.0);
  const std::size_t k = epoch.users();
  constexpr double kTiny = std::numeric_limits<double>::min();

  // Multipliers of the linear-branch (alpha) and saturation (beta) epigraph constraints.
  std::vector<double> alpha(k, 0.0);
  std::vector<double> beta(k, 0.0);
  double eps = 0.0;           // multiplier of the share constraint
  double marginal_power = 0.0;  // sum_k alpha_k·N0·eta_k·x_k
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t u = epoch.order[r];
    const double xc = epoch.x[u] / c;
    switch (alloc.regime[u]) {
      case Regime::saturated: beta[u] = xc; break;
      case Regime::linear: alpha[u] = xc; break;
      case Regime::boundary:
        alpha[u] = (1.0 - rho) * xc;
        beta[u] = rho * xc;
        break;
      case Regime::inactive: break;
    }
    eps += beta[u] * epoch.sat_gain[r] / epoch.x[u];
    marginal_power += alpha[u] * epoch.linear_gain[r] / epoch.x[u];
  }
  // Multiplier of the peak-power constraint when p0 sits at p_max.
  const double gamma = alloc.peak_clipped ? marginal_power - lambda : 0.0;
  eps += gamma * alloc.p0;

  double equal_snr = 0.0;
  double stationarity = 0.0;
  double recovery = 0.0;
  double closure = alloc.tau0;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t u = epoch.order[r];
    const double tau = alloc.tau[u];
    closure += tau;
    const double ex = std::min(alloc.p0 * epoch.linear_gain[r], epoch.sat_gain[r]) * alloc.tau0;
    const double snr = ex / tau;
    equal_snr = std::max(equal_snr, std::abs(snr - (c - 1.0)) / std::max(c - 1.0, kTiny));
    const double stat = std::log1p(snr) - snr / (1.0 + snr) - eps;
    stationarity = std::max(stationarity, std::abs(stat) / std::max(std::log(c), kTiny));
    const double rec = epoch.x[u] / (1.0 + snr) - alpha[u] - beta[u];
    recovery = std::max(recovery, std::abs(rec) / (epoch.x[u] / c));
  }

  double dual = 0.0;
  if (alloc.peak_clipped) {
    dual = std::max(0.0, -gamma) / std::max(lambda, kTiny);
  } else {
    dual = std::abs(lambda - marginal_power) / std::max({lambda, marginal_power, kTiny});
  }
  double rho_range = 0.0;
  if (alloc.rho) rho_range = std::max({0.0, -rho, rho - 1.0});

  return {{"equal_snr", equal_snr},
          {"stationarity_tau", stationarity},
          {"multiplier_recovery", recovery},
          {"dual_feasibility", dual},
          {"rho_range", rho_range},
          {"share_closure", std::abs(closure - 1.0)}};
}

double max_residual(const std::map<std::string, double>& residuals) {
  double m = 0.0;
  for (const auto& [name, value] : residuals) m = std::max(m, value);
  return m;
}

std::vector<CertCase> certification_cases(std::uint64_t seed, int samples) {
  constexpr int kUserCounts[] = {1, 2, 3, 5};
  std::vector<CertCase> cases;
  cases.reserve(static_cast<std::size_t>(std::max(samples, 0)));
  for (int n = 0; n < samples; ++n) {
    rng::Stream s(seed, static_cast<std::uint64_t>(n));
    CertCase c;
    const int k = kUserCounts[n % 4];
    for (int u = 0; u < k; ++u) {
      EhuProfile p;
      p.eta = s.uniform(0.1, 0.6);
      p.p_sat = std::pow(10.0, s.uniform(-6.0, -4.0));
      p.distance = 10.0;
      c.profiles.push_back(p);
      c.x.push_back(std::pow(10.0, s.uniform(-8.0, -5.0)) / c.n0);
    }
    double a0 = 0.0;
    for (int u = 0; u < k; ++u) a0 += c.n0 * c.profiles[u].eta * c.x[u] * c.x[u];
    // Mostly active epochs, with some idle ones above A_0.
    c.lambda = a0 * std::pow(10.0, s.uniform(-3.0, 0.15));
    if (s.uniform() < 0.5) {
      double max_threshold = 0.0;
      for (int u = 0; u < k; ++u)
        max_threshold = std::max(max_threshold, c.profiles[u].p_sat / (c.n0 * c.profiles[u].eta * c.x[u]));
      c.p_max = max_threshold * std::pow(10.0, s.uniform(-1.5, 0.3));
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

EpochAllocation perturb_tau0(const EpochAllocation& alloc, double factor) {
  EpochAllocation out = alloc;
  if (!alloc.active()) return out;
  out.tau0 = std::min(1.0, alloc.tau0 * (1.0 + factor));
  const double rest = std::accumulate(alloc.tau.begin(), alloc.tau.end(), 0.0);
  if (rest > 0.0)
    for (auto& t : out.tau) t *= (1.0 - out.tau0) / rest;
  return out;
}

Certificate certify(const CertCase& c, const CertifyOptions& options, kernels::Exec exec) {
  Certificate cert;
  const auto epoch = make_epoch(c.x, c.profiles, c.n0);
  cert.allocation = allocate_theorem2(epoch, c.lambda, c.p_max);
  if (options.corrupt_tau0 != 0.0) cert.allocation = perturb_tau0(cert.allocation, options.corrupt_tau0);
  cert.active = cert.allocation.active();
  cert.report = epoch_grid_search(c.x, c.profiles, c.n0, cert.allocation, c.lambda, c.p_max, options.grid, exec);
  bool ok = cert.report.relative_gap() <= options.gap_tolerance;
  if (cert.active) {
    cert.report.kkt_residuals = kkt_residuals(cert.allocation, epoch, c.lambda);
    ok = ok && max_residual(cert.report.kkt_residuals) <= options.residual_tolerance;
  }
  cert.passed = ok;
  return cert;
}

}  // namespace wpcn::oracle
