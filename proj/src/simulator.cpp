#include "wpcn/simulator.hpp"

#include "wpcn/rng.hpp"

#include <omp.h>

#include <cmath>

namespace wpcn {

double mean_path_gain(double distance) { return 1e-3 * std::pow(distance, -3.0); }

FadingSpec FadingSpec::from_profiles(std::span<const EhuProfile> profiles, std::uint64_t seed, std::size_t epochs) {
  FadingSpec spec;
  for (const auto& p : profiles) spec.mean_gain.push_back(mean_path_gain(p.distance));
  spec.seed = seed;
  spec.epochs = epochs;
  return spec;
}

void FadingSpec::validate() const {
  if (mean_gain.empty()) throw std::invalid_argument("fading: no users");
  for (double g : mean_gain)
    if (!(g > 0.0)) throw std::invalid_argument("fading: mean gains must be positive");
  if (epochs < 1) throw std::invalid_argument("fading: epochs must be >= 1");
}

ChannelBatch generate_epochs(const FadingSpec& spec, double n0, kernels::Exec exec) {
  spec.validate();
  ChannelBatch batch;
  batch.epochs = spec.epochs;
  batch.users = spec.mean_gain.size();
  batch.x.resize(batch.epochs * batch.users);
  const long long m = static_cast<long long>(batch.epochs);
  const auto fill = [&](long long i) {
    for (std::size_t k = 0; k < batch.users; ++k) {
      const double u = rng::uniform_open(rng::draw(spec.seed, k, static_cast<std::uint64_t>(i)));
      batch.x[static_cast<std::size_t>(i) * batch.users + k] = -spec.mean_gain[k] * std::log(u) / n0;
    }
  };
  if (exec == kernels::Exec::serial) {
    for (long long i = 0; i < m; ++i) fill(i);
  } else {
    const int cap = kernels::thread_cap();
#pragma omp parallel for schedule(static) num_threads(cap > 0 ? cap : omp_get_max_threads())
    for (long long i = 0; i < m; ++i) fill(i);
  }
  return batch;
}

std::vector<EpochChannel> prepare_epochs(const ChannelBatch& batch, std::span<const EhuProfile> profiles, double n0,
                                         kernels::Exec exec) {
  if (profiles.size() != batch.users) throw std::invalid_argument("prepare_epochs: profile count mismatch");
  std::vector<EpochChannel> out(batch.epochs);
  const long long m = static_cast<long long>(batch.epochs);
  if (exec == kernels::Exec::serial) {
    for (long long i = 0; i < m; ++i) out[i] = make_epoch(batch.row(i), profiles, n0);
  } else {
    const int cap = kernels::thread_cap();
#pragma omp parallel for schedule(static) num_threads(cap > 0 ? cap : omp_get_max_threads())
    for (long long i = 0; i < m; ++i) out[i] = make_epoch(batch.row(i), profiles, n0);
  }
  return out;
}

SchemeResult run_scheme(std::span<const EpochChannel> batch, std::span<const EhuProfile> profiles,
                        const NetworkConfig& config, Scheme scheme, const EhCurve& truth, kernels::Exec exec) {
  config.validate();
  if (batch.empty()) throw std::invalid_argument("run_scheme: empty batch");
  if (batch[0].users() != profiles.size()) throw std::invalid_argument("run_scheme: profile count mismatch");

  const auto budgeted = allocate_with_budget(batch, config, scheme, exec);
  const auto design = design_curves(profiles);
  const std::vector<EhCurve> truth_curves{truth};
  const auto truth_rates = kernels::average_rates(budgeted.allocations, batch, truth_curves, config.n0, exec);
  const auto design_rates = kernels::average_rates(budgeted.allocations, batch, design, config.n0, exec);

  SchemeResult r;
  r.scheme = scheme;
  r.avg_sum_rate = truth_rates.sum_rate;
  r.sum_rate_std_error = truth_rates.sum_rate_std_error;
  r.avg_sum_rate_design = design_rates.sum_rate;
  r.per_user_rate = truth_rates.per_user;
  r.consumed_avg_power = budgeted.consumption;
  r.lambda = budgeted.search.lambda;
  r.constraint_active = budgeted.search.constraint_active;
  r.time_shared_epochs = budgeted.time_shared_epochs;
  std::size_t active = 0;
  for (const auto& a : budgeted.allocations) active += a.active() ? 1 : 0;
  r.epochs_active_fraction = static_cast<double>(active) / static_cast<double>(batch.size());
  return r;
}

std::string_view to_string(SweepVariable v) { return v == SweepVariable::p_avg ? "p_avg" : "p_max"; }

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values list is empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw std::invalid_argument("sweep: values must be strictly increasing");
  if (schemes.empty()) throw std::invalid_argument("sweep: no schemes requested");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::span<const EhuProfile> profiles, const FadingSpec& fading,
                                kernels::Exec exec) {
  spec.validate();
  const auto channels = generate_epochs(fading, spec.fixed.n0, exec);
  const auto batch = prepare_epochs(channels, profiles, spec.fixed.n0, exec);
  std::vector<SweepRow> rows;
  for (double value : spec.values) {
    NetworkConfig cfg = spec.fixed;
    if (spec.variable == SweepVariable::p_avg) {
      cfg.p_avg = value;
      if (spec.peak_ratio > 0.0) cfg.p_max = spec.peak_ratio * value;
    } else {
      cfg.p_max = value;
    }
    for (Scheme scheme : spec.schemes) {
      SweepRow row;
      row.variable = spec.variable;
      row.value = value;
      row.k_users = static_cast<int>(profiles.size());
      row.result = run_scheme(batch, profiles, cfg, scheme, spec.truth, exec);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace wpcn
