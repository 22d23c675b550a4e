#pragma once

// Batch kernels over epochs. Every kernel has a serial reference path and an
// OpenMP path; both compute each epoch independently and reduce in a fixed
// order, so their results are bitwise identical for any thread count.

#include "wpcn/allocator.hpp"

#include <span>
#include <vector>

namespace wpcn::kernels {

enum class Exec { serial, parallel };

/// Thread cap for the parallel paths. Reads WPCN_THREADS once; 0 or unset
/// leaves the OpenMP default.
int thread_cap();
void set_thread_cap(int threads);

/// Pairwise (tree) summation; the split points depend only on the length.
double pairwise_sum(std::span<const double> values);

std::vector<EpochAllocation> allocate_batch(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                                            const NetworkConfig& config, Exec exec = Exec::parallel);

/// p0·tau0 of every epoch at the given lambda.
std::vector<double> epoch_consumption(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                                      const NetworkConfig& config, Exec exec = Exec::parallel);

/// Mean of epoch_consumption.
double mean_consumption(Scheme scheme, std::span<const EpochChannel> batch, double lambda,
                        const NetworkConfig& config, Exec exec = Exec::parallel);

struct RateSummary {
  std::vector<double> per_user;  // average over epochs
  double sum_rate = 0.0;         // average over epochs of the per-epoch sum
  double sum_rate_std_error = 0.0;
};

RateSummary average_rates(std::span<const EpochAllocation> allocations, std::span<const EpochChannel> batch,
                          std::span<const EhCurve> curves, double n0, Exec exec = Exec::parallel);

}  // namespace wpcn::kernels
