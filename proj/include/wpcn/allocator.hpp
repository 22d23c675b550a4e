#pragma once

#include "wpcn/eh_model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wpcn {

class AllocationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkConfig {
  int k_users = 1;
  double n0 = 1e-10;                // AWGN power, W
  double p_avg = 1.0;               // average BS power budget, W
  std::optional<double> p_max;      // peak BS power, W; unset means unconstrained
  double epoch_duration = 1.0;      // s; rates are per unit time so this only scales energies

  void validate() const;
};

/// One block-fading epoch. Per-user vectors use the caller's user indexing;
/// the rank vectors follow the ascending-threshold relabeling (ties broken
/// by user index).
struct EpochChannel {
  std::vector<double> x;            // x_k = x'_k / N0, 1/W
  std::vector<double> thresholds;   // P_Hk / (N0·eta_k·x_k), W
  std::vector<std::size_t> order;   // order[r] = user at rank r (0-based)
  std::vector<double> linear_gain;  // by rank: N0·eta·x^2
  std::vector<double> sat_gain;     // by rank: P_H·x
  // Indexed by s = 0..K; these do not depend on lambda so they are cached.
  std::vector<double> a_tail;       // A_s: sum of linear_gain over ranks s+1..K
  std::vector<double> b_head;       // B_s: sum of sat_gain over ranks 1..s
  std::vector<double> z;            // z_of(B_s)

  std::size_t users() const { return x.size(); }
};

EpochChannel make_epoch(std::span<const double> x, std::span<const EhuProfile> profiles, double n0);

/// Same channel with every saturation level sent to +inf (linear EH model).
EpochChannel linear_model(const EpochChannel& epoch);

struct Coefficients {
  double a = 0.0;  // sum over ranks s+1..K of N0·eta·x^2
  double b = 0.0;  // sum over ranks 1..s of P_H·x
};

/// s counts ranks from 1 as in the relabeled ordering; 0 <= s <= K.
Coefficients coefficients(const EpochChannel& epoch, int s);

/// Rank (1-based) of the user whose channel is inverted, or nullopt when
/// the epoch is idle (A_0 <= lambda).
std::optional<int> select_s_star(const EpochChannel& epoch, double lambda);

struct CommonSnr {
  double c = 1.0;    // common SNR constant, SNR = c - 1
  double rho = 0.0;  // split of the boundary user's multiplier
};

CommonSnr solve_c_theorem1(const EpochChannel& epoch, double lambda, int s_star);

/// Root C > 1 of ln C - (C-1)/C + lambda·p0 = (p0·A_g + B_g)/C, i.e. the
/// common SNR constant when the BS power is fixed at p0 and ranks 1..g saturate.
double solve_c_fixed_power(const EpochChannel& epoch, double lambda, double p0, int g);

enum class Regime { saturated, boundary, linear, inactive };

std::string_view to_string(Regime r);

struct EpochAllocation {
  double p0 = 0.0;
  double tau0 = 0.0;
  std::vector<double> tau;           // per user
  std::vector<Regime> regime;        // per user
  double c_const = 0.0;
  std::optional<int> s_star;         // rank of the inverted user (theorem 1 epochs)
  std::optional<double> rho;
  bool peak_clipped = false;         // p0 pinned at p_max with no boundary user
  bool time_shared = false;          // mixture of two optimal allocations at a dual switch point

  bool active() const { return p0 > 0.0; }
  double consumption() const { return p0 * tau0; }
};

EpochAllocation idle_allocation(std::size_t users);

EpochAllocation allocate_theorem1(const EpochChannel& epoch, double lambda);

/// Peak-constrained allocation; p_max unset behaves as +inf.
EpochAllocation allocate_theorem2(const EpochChannel& epoch, double lambda, std::optional<double> p_max);

/// Allocation that is optimal for the linear EH model (binary BS power).
EpochAllocation baseline1(const EpochChannel& epoch, double lambda, double p_max);

/// Full peak power, tau0 = p_avg/p_max, equal information-transfer shares.
EpochAllocation baseline2(const EpochChannel& epoch, const NetworkConfig& config);

enum class Scheme { theorem1, theorem2, baseline1, baseline2 };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

/// Dispatch on scheme. baseline1 expects the epoch as built from the real
/// profiles and switches to the linear model internally.
EpochAllocation allocate(Scheme scheme, const EpochChannel& epoch, double lambda, const NetworkConfig& config);

/// Convex combination theta·a + (1-theta)·b of two allocations in the
/// (tau0, tau_k, p0·tau0) variables.
EpochAllocation time_share(const EpochAllocation& a, const EpochAllocation& b, double theta,
                           const EpochChannel& epoch);

/// Per-user rates in nats/s/Hz with harvested power taken from `curves`
/// (one curve for all users, or one per user).
std::vector<double> epoch_rates(const EpochAllocation& alloc, const EpochChannel& epoch,
                                std::span<const EhCurve> curves, double n0);

std::vector<EhCurve> design_curves(std::span<const EhuProfile> profiles);

}  // namespace wpcn
