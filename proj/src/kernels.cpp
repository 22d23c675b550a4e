#include "wpcn/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

namespace wpcn::kernels {

namespace {

std::atomic<int> g_thread_cap{-1};

int threads_from_env() {
  const char* env = std::getenv("WPCN_THREADS");
  if (env == nullptr) return 0;
  try {
    return std::max(0, std::stoi(env));
  } catch (const std::exception&) {
    return 0;
  }
}

// Runs body(i) for i in [0, n). Exceptions thrown inside the parallel region
// are captured and the first one (lowest index) is rethrown afterwards.
template <class Body>
void for_each_epoch(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  bool failed = false;
  const int cap = thread_cap();
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(cap > 0 ? cap : omp_get_max_threads()) reduction(|| : failed)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      failed = true;
    }
  }
  if (failed)
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
}

}  // namespace

int thread_cap() {
  int cap = g_thread_cap.load();
  if (cap < 0) {
    cap = threads_from_env();
    g_thread_cap.store(cap);
  }
  return cap;
}

void set_thread_cap(int threads) { g_thread_cap.store(std::max(0, threads)); }

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<EpochAllocation> allocate_batch(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                                            const NetworkConfig& config, Exec exec) {
  std::vector<EpochAllocation> out(batch.size());
  for_each_epoch(batch.size(), exec, [&](std::size_t i) { out[i] = allocate(scheme, batch[i], lambda, config); });
  return out;
}

std::vector<double> epoch_consumption(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                                      const NetworkConfig& config, Exec exec) {
  std::vector<double> out(batch.size());
  for_each_epoch(batch.size(), exec,
                 [&](std::size_t i) { out[i] = allocate(scheme, batch[i], lambda, config).consumption(); });
  return out;
}

double mean_consumption(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                        const NetworkConfig& config, Exec exec) {
  const auto per_epoch = epoch_consumption(scheme, batch, lambda, config, exec);
  return pairwise_sum(per_epoch) / static_cast<double>(batch.size());
}

RateSummary average_rates(std::span<const EpochAllocation> allocations, std::span<const EpochChannel> batch,
                          std::span<const EhCurve> curves, double n0, Exec exec) {
  const std::size_t m = batch.size();
  const std::size_t k = m == 0 ? 0 : batch[0].users();
  // Row-major by user so each user's column is contiguous for the reduction.
  std::vector<double> rates(k * m, 0.0);
  for_each_epoch(m, exec, [&](std::size_t i) {
    const auto r = epoch_rates(allocations[i], batch[i], curves, n0);
    for (std::size_t u = 0; u < k; ++u) rates[u * m + i] = r[u];
  });
  RateSummary out;
  out.per_user.resize(k);
  for (std::size_t u = 0; u < k; ++u) {
    out.per_user[u] = pairwise_sum(std::span<const double>(rates).subspan(u * m, m)) / static_cast<double>(m);
    out.sum_rate += out.per_user[u];
  }
  if (m > 1) {
    std::vector<double> sq(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t u = 0; u < k; ++u) s += rates[u * m + i];
      sq[i] = (s - out.sum_rate) * (s - out.sum_rate);
    }
    const double var = pairwise_sum(sq) / static_cast<double>(m - 1);
    out.sum_rate_std_error = std::sqrt(var / static_cast<double>(m));
  }
  return out;
}

}  // namespace wpcn::kernels
