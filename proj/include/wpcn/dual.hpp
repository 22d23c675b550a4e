#pragma once

// Search over the multiplier of the average BS power budget.

#include "wpcn/allocator.hpp"
#include "wpcn/kernels.hpp"

#include <utility>
#include <vector>

namespace wpcn {

struct LambdaSearch {
  double lambda = 0.0;       // upper end of the final bracket: consumption <= p_avg
  double lambda_lo = 0.0;    // lower end: consumption > p_avg (equals lambda when inactive)
  double consumption = 0.0;  // mean p0·tau0 at lambda
  bool constraint_active = false;
  int iterations = 0;
  std::vector<std::pair<double, double>> trace;  // (lambda, consumption) for every evaluation
};

/// Bisection on lambda over [0, max_i A_0(i)]. Runs until the bracket
/// cannot be split further in double precision (at most 200 steps). When
/// the consumption at lambda = 0 already fits the budget, returns lambda = 0
/// with constraint_active = false.
LambdaSearch find_lambda(std::span<const EpochChannel> batch, const NetworkConfig& config, Scheme scheme,
                         kernels::Exec exec = kernels::Exec::parallel);

struct BudgetedAllocation {
  std::vector<EpochAllocation> allocations;
  LambdaSearch search;
  double consumption = 0.0;
  std::size_t time_shared_epochs = 0;
};

/// Allocates every epoch at the searched lambda. Consumption jumps where an
/// epoch switches its inverted user; those epochs are time-shared between
/// the two optimal allocations at the ends of the final bracket so the
/// budget is met with equality.
BudgetedAllocation allocate_with_budget(std::span<const EpochChannel> batch, const NetworkConfig& config,
                                        Scheme scheme, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace wpcn
