#include "wpcn/allocator.hpp"

#include "wpcn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wpcn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shares for a given BS power, common SNR constant and saturated prefix
// (ranks 0..n_sat-1 harvest P_H·tau0, the rest are linear).
void fill_shares(EpochAllocation& out, const EpochChannel& epoch, double p0, int n_sat, double c) {
  const std::size_t k = epoch.users();
  const auto co = coefficients(epoch, n_sat);
  const double load = p0 * co.a + co.b;
  out.p0 = p0;
  out.c_const = c;
  out.tau0 = (c - 1.0) / (c - 1.0 + load);
  const double scale = out.tau0 / (c - 1.0);
  out.tau.assign(k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    const double energy_gain =
        static_cast<int>(r) < n_sat ? epoch.sat_gain[r] : p0 * epoch.linear_gain[r];
    out.tau[epoch.order[r]] = energy_gain * scale;
  }
}

void label_by_threshold(EpochAllocation& out, const EpochChannel& epoch) {
  out.regime.assign(epoch.users(), Regime::inactive);
  if (!out.active()) return;
  for (std::size_t k = 0; k < epoch.users(); ++k) {
    const double t = epoch.thresholds[k];
    out.regime[k] = t < out.p0 ? Regime::saturated : (t > out.p0 ? Regime::linear : Regime::boundary);
  }
}

// Whether the epoch still pays off at BS power p0 with ranks 1..g saturated.
// Within a rounding error of A_0 = lambda this can disagree with the s*
// test; such knife-edge epochs are treated as idle.
bool worth_powering(const EpochChannel& epoch, double lambda, double p0, int g) {
  const auto co = coefficients(epoch, g);
  return p0 * co.a + co.b > lambda * p0;
}

void cache_coefficients(EpochChannel& e) {
  const std::size_t k = e.users();
  e.a_tail.assign(k + 1, 0.0);
  e.b_head.assign(k + 1, 0.0);
  e.z.assign(k + 1, 1.0);
  for (std::size_t s = 0; s <= k; ++s) {
    for (std::size_t r = s; r < k; ++r) e.a_tail[s] += e.linear_gain[r];
    for (std::size_t r = 0; r < s; ++r) e.b_head[s] += e.sat_gain[r];
    e.z[s] = numerics::z_of(e.b_head[s]);
  }
}

}  // namespace

void NetworkConfig::validate() const {
  if (k_users < 1) throw AllocationError("network: k_users must be >= 1");
  if (!(n0 > 0.0)) throw AllocationError("network: n0 must be positive");
  if (!(p_avg > 0.0)) throw AllocationError("network: p_avg must be positive");
  if (p_max && !(*p_max > 0.0)) throw AllocationError("network: p_max must be positive");
  if (!(epoch_duration > 0.0)) throw AllocationError("network: epoch_duration must be positive");
}

EpochChannel make_epoch(std::span<const double> x, std::span<const EhuProfile> profiles, double n0) {
  if (x.size() != profiles.size() || x.empty())
    throw AllocationError("make_epoch: gain and profile counts differ");
  const std::size_t k = x.size();
  EpochChannel e;
  e.x.assign(x.begin(), x.end());
  e.thresholds.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(x[i] > 0.0)) throw AllocationError("make_epoch: channel gains must be positive");
    e.thresholds[i] = profiles[i].p_sat / (n0 * profiles[i].eta * x[i]);
  }
  e.order.resize(k);
  std::iota(e.order.begin(), e.order.end(), std::size_t{0});
  std::stable_sort(e.order.begin(), e.order.end(),
                   [&](std::size_t a, std::size_t b) { return e.thresholds[a] < e.thresholds[b]; });
  e.linear_gain.resize(k);
  e.sat_gain.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t u = e.order[r];
    e.linear_gain[r] = n0 * profiles[u].eta * x[u] * x[u];
    e.sat_gain[r] = profiles[u].p_sat * x[u];
  }
  cache_coefficients(e);
  return e;
}

EpochChannel linear_model(const EpochChannel& epoch) {
  EpochChannel lin = epoch;
  std::iota(lin.order.begin(), lin.order.end(), std::size_t{0});
  for (std::size_t r = 0; r < epoch.users(); ++r) lin.linear_gain[epoch.order[r]] = epoch.linear_gain[r];
  std::fill(lin.thresholds.begin(), lin.thresholds.end(), kInf);
  std::fill(lin.sat_gain.begin(), lin.sat_gain.end(), kInf);
  cache_coefficients(lin);
  return lin;
}

Coefficients coefficients(const EpochChannel& epoch, int s) {
  const int k = static_cast<int>(epoch.users());
  if (s < 0 || s > k) throw AllocationError("coefficients: index out of range");
  return {epoch.a_tail[static_cast<std::size_t>(s)], epoch.b_head[static_cast<std::size_t>(s)]};
}

std::optional<int> select_s_star(const EpochChannel& epoch, double lambda) {
  const int k = static_cast<int>(epoch.users());
  if (lambda == 0.0) return k;
  if (epoch.a_tail[0] <= lambda) return std::nullopt;
  // A_s/lambda - z_s is strictly decreasing in s and positive at s = 0, so the
  // first s where it stops being positive is the unique index of the interval test.
  for (int s = 1; s <= k; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (epoch.a_tail[i] / lambda <= epoch.z[i]) return s;
  }
  return k;
}

double solve_c_fixed_power(const EpochChannel& epoch, double lambda, double p0, int g) {
  const auto co = coefficients(epoch, g);
  const double load = p0 * co.a + co.b;
  const double price = lambda * p0;
  if (!(load > price)) throw AllocationError("solve_c: epoch would be idle at this power");
  // Increasing in C for C >= 1: derivative is (C - 1 + load)/C^2.
  const auto residual = [load, price](double c) {
    return std::log(c) - (c - 1.0) / c + price - load / c;
  };
  double hi = std::exp(2.0) * std::max(1.0, load);
  while (residual(hi) <= 0.0) hi *= 2.0;
  return numerics::solve_monotone_root(residual, numerics::RootBracket{1.0, hi, 0.0, 1e-15, 400});
}

CommonSnr solve_c_theorem1(const EpochChannel& epoch, double lambda, int s_star) {
  const int k = static_cast<int>(epoch.users());
  if (s_star < 1 || s_star > k) throw AllocationError("solve_c_theorem1: s* out of range");
  const std::size_t r = static_cast<std::size_t>(s_star - 1);
  const double p0 = epoch.thresholds[epoch.order[r]];
  CommonSnr out;
  try {
    out.c = solve_c_fixed_power(epoch, lambda, p0, s_star);
  } catch (const std::exception& e) {
    throw AllocationError(std::string("solve_c_theorem1: inconsistent s*: ") + e.what());
  }
  const double a_s = coefficients(epoch, s_star).a;
  out.rho = 1.0 - (lambda * out.c - a_s) / epoch.linear_gain[r];
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::saturated: return "saturated";
    case Regime::boundary: return "boundary";
    case Regime::linear: return "linear";
    case Regime::inactive: return "inactive";
  }
  return "?";
}

EpochAllocation idle_allocation(std::size_t users) {
  EpochAllocation a;
  a.tau.assign(users, 0.0);
  a.regime.assign(users, Regime::inactive);
  return a;
}

EpochAllocation allocate_theorem1(const EpochChannel& epoch, double lambda) {
  if (!(lambda >= 0.0)) throw AllocationError("allocate: lambda must be non-negative");
  const auto s_star = select_s_star(epoch, lambda);
  if (!s_star) return idle_allocation(epoch.users());
  const int s = *s_star;
  const std::size_t boundary = epoch.order[static_cast<std::size_t>(s - 1)];
  if (!worth_powering(epoch, lambda, epoch.thresholds[boundary], s)) return idle_allocation(epoch.users());
  const auto snr = solve_c_theorem1(epoch, lambda, s);
  if (!(snr.c > 1.0)) return idle_allocation(epoch.users());

  EpochAllocation out;
  fill_shares(out, epoch, epoch.thresholds[boundary], s, snr.c);
  out.s_star = s;
  out.rho = snr.rho;
  out.regime.assign(epoch.users(), Regime::linear);
  for (int r = 0; r < s; ++r)
    out.regime[epoch.order[static_cast<std::size_t>(r)]] = r + 1 < s ? Regime::saturated : Regime::boundary;
  return out;
}

EpochAllocation allocate_theorem2(const EpochChannel& epoch, double lambda, std::optional<double> p_max) {
  if (!p_max) return allocate_theorem1(epoch, lambda);
  if (!(*p_max > 0.0)) throw AllocationError("allocate: p_max must be positive");
  if (!(lambda >= 0.0)) throw AllocationError("allocate: lambda must be non-negative");
  const auto s_star = select_s_star(epoch, lambda);
  if (!s_star) return idle_allocation(epoch.users());

  const int g = static_cast<int>(std::count_if(epoch.thresholds.begin(), epoch.thresholds.end(),
                                               [&](double t) { return t < *p_max; }));
  if (g >= *s_star) return allocate_theorem1(epoch, lambda);

  if (!worth_powering(epoch, lambda, *p_max, g)) return idle_allocation(epoch.users());
  const double c = solve_c_fixed_power(epoch, lambda, *p_max, g);
  if (!(c > 1.0)) return idle_allocation(epoch.users());
  EpochAllocation out;
  fill_shares(out, epoch, *p_max, g, c);
  out.peak_clipped = true;
  out.regime.assign(epoch.users(), Regime::linear);
  for (int r = 0; r < g; ++r) out.regime[epoch.order[static_cast<std::size_t>(r)]] = Regime::saturated;
  return out;
}

EpochAllocation baseline1(const EpochChannel& epoch, double lambda, double p_max) {
  return allocate_theorem2(linear_model(epoch), lambda, p_max);
}

EpochAllocation baseline2(const EpochChannel& epoch, const NetworkConfig& config) {
  if (!config.p_max) throw AllocationError("baseline2 needs a peak power p_max");
  if (config.p_avg > *config.p_max) throw AllocationError("baseline2: p_avg exceeds p_max");
  const std::size_t k = epoch.users();
  EpochAllocation out;
  out.p0 = *config.p_max;
  out.tau0 = config.p_avg / *config.p_max;
  out.tau.assign(k, (1.0 - out.tau0) / static_cast<double>(k));
  label_by_threshold(out, epoch);
  return out;
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::theorem1: return "theorem1";
    case Scheme::theorem2: return "theorem2";
    case Scheme::baseline1: return "baseline1";
    case Scheme::baseline2: return "baseline2";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "theorem1") return Scheme::theorem1;
  if (name == "theorem2" || name == "proposed") return Scheme::theorem2;
  if (name == "baseline1") return Scheme::baseline1;
  if (name == "baseline2") return Scheme::baseline2;
  throw AllocationError("unknown scheme '" + std::string(name) + "'");
}

EpochAllocation allocate(Scheme scheme, const EpochChannel& epoch, double lambda, const NetworkConfig& config) {
  switch (scheme) {
    case Scheme::theorem1: return allocate_theorem1(epoch, lambda);
    case Scheme::theorem2: return allocate_theorem2(epoch, lambda, config.p_max);
    case Scheme::baseline1:
      if (!config.p_max) throw AllocationError("baseline1 needs a peak power p_max");
      return baseline1(epoch, lambda, *config.p_max);
    case Scheme::baseline2: return baseline2(epoch, config);
  }
  throw AllocationError("allocate: bad scheme");
}

EpochAllocation time_share(const EpochAllocation& a, const EpochAllocation& b, double theta,
                           const EpochChannel& epoch) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw AllocationError("time_share: theta outside [0, 1]");
  if (!a.active() || !b.active()) throw AllocationError("time_share: both allocations must be active");
  EpochAllocation out;
  out.tau0 = theta * a.tau0 + (1.0 - theta) * b.tau0;
  // Equal powers stay exact; otherwise p0 is whatever keeps the mixed energy.
  out.p0 = a.p0 == b.p0 ? a.p0 : (theta * a.consumption() + (1.0 - theta) * b.consumption()) / out.tau0;
  out.tau.resize(a.tau.size());
  for (std::size_t k = 0; k < a.tau.size(); ++k) out.tau[k] = theta * a.tau[k] + (1.0 - theta) * b.tau[k];
  out.c_const = theta * a.c_const + (1.0 - theta) * b.c_const;
  out.peak_clipped = a.peak_clipped && b.peak_clipped;
  out.time_shared = true;
  label_by_threshold(out, epoch);
  return out;
}

std::vector<double> epoch_rates(const EpochAllocation& alloc, const EpochChannel& epoch,
                                std::span<const EhCurve> curves, double n0) {
  const std::size_t k = epoch.users();
  if (curves.size() != 1 && curves.size() != k) throw AllocationError("epoch_rates: curve count mismatch");
  std::vector<double> rates(k, 0.0);
  if (!alloc.active()) return rates;
  for (std::size_t u = 0; u < k; ++u) {
    const double tau = alloc.tau[u];
    if (!(tau > 0.0)) continue;
    const auto& curve = curves.size() == 1 ? curves[0] : curves[u];
    const double p_h = harvested_power(curve, n0 * epoch.x[u] * alloc.p0);
    rates[u] = tau * std::log1p(alloc.tau0 * p_h * epoch.x[u] / tau);
  }
  return rates;
}

std::vector<EhCurve> design_curves(std::span<const EhuProfile> profiles) {
  std::vector<EhCurve> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.emplace_back(PiecewiseLinearCurve{p.eta, p.p_sat});
  return out;
}

}  // namespace wpcn
