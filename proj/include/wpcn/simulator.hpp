#pragma once

#include "wpcn/allocator.hpp"
#include "wpcn/dual.hpp"
#include "wpcn/kernels.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wpcn {

/// Mean path gain E[x'_k] = 1e-3·D_k^-3.
double mean_path_gain(double distance);

struct FadingSpec {
  std::vector<double> mean_gain;  // E[x'_k] per user
  std::uint64_t seed = 1;
  std::size_t epochs = 10000;     // M

  static FadingSpec from_profiles(std::span<const EhuProfile> profiles, std::uint64_t seed, std::size_t epochs);
  void validate() const;
};

/// Normalised gains x_k(i) = x'_k(i)/N0, row-major by epoch.
struct ChannelBatch {
  std::size_t epochs = 0;
  std::size_t users = 0;
  std::vector<double> x;

  std::span<const double> row(std::size_t i) const { return std::span<const double>(x).subspan(i * users, users); }
};

/// Rayleigh block fading: x'_k(i) is exponential with the given mean. Draw
/// (i, k) uses counter i of stream k, so a batch with more users or epochs
/// extends a smaller one with the same seed.
ChannelBatch generate_epochs(const FadingSpec& spec, double n0, kernels::Exec exec = kernels::Exec::parallel);

std::vector<EpochChannel> prepare_epochs(const ChannelBatch& batch, std::span<const EhuProfile> profiles, double n0,
                                         kernels::Exec exec = kernels::Exec::parallel);

struct SchemeResult {
  Scheme scheme = Scheme::theorem2;
  double avg_sum_rate = 0.0;         // under the truth curve, nats/s/Hz
  double avg_sum_rate_design = 0.0;  // under the piecewise design model
  double sum_rate_std_error = 0.0;   // Monte-Carlo standard error of avg_sum_rate
  std::vector<double> per_user_rate; // truth curve
  double consumed_avg_power = 0.0;
  double lambda = 0.0;
  double epochs_active_fraction = 0.0;
  bool constraint_active = false;
  std::size_t time_shared_epochs = 0;
};

SchemeResult run_scheme(std::span<const EpochChannel> batch, std::span<const EhuProfile> profiles,
                        const NetworkConfig& config, Scheme scheme, const EhCurve& truth,
                        kernels::Exec exec = kernels::Exec::parallel);

enum class SweepVariable { p_avg, p_max };

std::string_view to_string(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::p_avg;
  std::vector<double> values;
  NetworkConfig fixed;
  std::vector<Scheme> schemes;
  EhCurve truth = PiecewiseLinearCurve{};
  double peak_ratio = 0.0;  // p_avg sweeps: p_max = peak_ratio·p_avg when > 0

  void validate() const;
};

struct SweepRow {
  SweepVariable variable = SweepVariable::p_avg;
  double value = 0.0;
  int k_users = 0;
  SchemeResult result;
};

/// One row per (value, scheme), all on the same fading batch.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::span<const EhuProfile> profiles, const FadingSpec& fading,
                                kernels::Exec exec = kernels::Exec::parallel);

}  // namespace wpcn
