#pragma once

// CSV emitters. Every file starts with "# key=value" lines echoing the
// resolved configuration, followed by one header row. Numbers are written
// with 17 significant digits.

#include "wpcn/config.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/simulator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wpcn::csv {

void write_solve(std::ostream& out, const RunConfig& config, const std::vector<SchemeResult>& results);

/// Columns: sweep_var,value,scheme,sum_rate_truth,sum_rate_design,consumption,lambda,active_fraction,k_users
void write_sweep(std::ostream& out, const RunConfig& config, const std::vector<SweepRow>& rows);

/// gnuplot-style blocks, one per (scheme, K): "value sum_rate_truth" lines.
void write_plot_data(std::ostream& out, const std::vector<SweepRow>& rows);

struct VerifySummary {
  double worst_relative_gap = 0.0;
  double worst_residual = 0.0;
  std::size_t active = 0;
  std::size_t failed = 0;
};

VerifySummary summarize(const std::vector<oracle::Certificate>& certs);

void write_verify(std::ostream& out, std::uint64_t seed, const oracle::CertifyOptions& options,
                  const std::vector<oracle::CertCase>& cases, const std::vector<oracle::Certificate>& certs);

/// Leading "# ..." lines of a CSV stream, prefix stripped.
std::vector<std::string> read_header_comments(std::istream& in);

}  // namespace wpcn::csv
