#include "wpcn/dual.hpp"

#include <algorithm>

namespace wpcn {

LambdaSearch find_lambda(std::span<const EpochChannel> batch, const NetworkConfig& config, Scheme scheme,
                         kernels::Exec exec) {
  if (batch.empty()) throw AllocationError("find_lambda: empty batch");
  LambdaSearch out;
  if (scheme == Scheme::baseline2) {
    out.consumption = kernels::mean_consumption(scheme, batch, 0.0, config, exec);
    return out;
  }
  const auto consumption = [&](double lambda) {
    const double c = kernels::mean_consumption(scheme, batch, lambda, config, exec);
    out.trace.emplace_back(lambda, c);
    return c;
  };

  const double at_zero = consumption(0.0);
  if (at_zero <= config.p_avg) {
    out.consumption = at_zero;
    return out;
  }

  // Every epoch is idle once lambda reaches its A_0.
  double hi = 0.0;
  for (const auto& e : batch) hi = std::max(hi, coefficients(e, 0).a);
  double lo = 0.0;
  double c_hi = consumption(hi);
  constexpr int kMaxIter = 200;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double c = consumption(mid);
    if (c > config.p_avg) {
      lo = mid;
    } else {
      hi = mid;
      c_hi = c;
    }
  }
  out.lambda = hi;
  out.lambda_lo = lo;
  out.consumption = c_hi;
  out.constraint_active = true;
  out.iterations = iter;
  return out;
}

BudgetedAllocation allocate_with_budget(std::span<const EpochChannel> batch, const NetworkConfig& config,
                                        Scheme scheme, kernels::Exec exec) {
  BudgetedAllocation out;
  out.search = find_lambda(batch, config, scheme, exec);
  out.allocations = kernels::allocate_batch(scheme, batch, out.search.lambda, config, exec);

  const auto total = [&] {
    std::vector<double> e(out.allocations.size());
    std::transform(out.allocations.begin(), out.allocations.end(), e.begin(),
                   [](const EpochAllocation& a) { return a.consumption(); });
    return kernels::pairwise_sum(e);
  };

  if (out.search.constraint_active) {
    const auto below = kernels::allocate_batch(scheme, batch, out.search.lambda_lo, config, exec);
    double deficit = config.p_avg * static_cast<double>(batch.size()) - total();
    for (std::size_t i = 0; i < batch.size() && deficit > 0.0; ++i) {
      auto& chosen = out.allocations[i];
      const auto& alt = below[i];
      if (!chosen.active() || !alt.active()) continue;
      const double diff = alt.consumption() - chosen.consumption();
      if (!(diff > 0.0)) continue;
      const double theta = std::min(1.0, deficit / diff);
      const EpochChannel& labels = scheme == Scheme::baseline1 ? linear_model(batch[i]) : batch[i];
      chosen = theta == 1.0 ? alt : time_share(alt, chosen, theta, labels);
      deficit -= theta * diff;
      ++out.time_shared_epochs;
    }
  }
  out.consumption = total() / static_cast<double>(batch.size());
  return out;
}

}  // namespace wpcn
