#include "wpcn/csv.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace wpcn::csv {

namespace {

void write_echo(std::ostream& out, const RunConfig& config) {
  for (const auto& line : echo_lines(config)) out << "# " << line << '\n';
}

const std::vector<std::string> kResidualKeys{"equal_snr",        "stationarity_tau", "multiplier_recovery",
                                             "dual_feasibility", "rho_range",        "share_closure"};

}  // namespace

void write_solve(std::ostream& out, const RunConfig& config, const std::vector<SchemeResult>& results) {
  write_echo(out, config);
  out << "scheme,k_users,p_avg,p_max,sum_rate_truth,sum_rate_design,sum_rate_std_error,consumption,lambda,"
         "active_fraction,constraint_active,time_shared_epochs";
  for (int k = 1; k <= config.network.k_users; ++k) out << ",rate_user" << k;
  out << '\n';
  for (const auto& r : results) {
    out << to_string(r.scheme) << ',' << config.network.k_users << ',' << format_double(config.network.p_avg) << ','
        << (config.network.p_max ? format_double(*config.network.p_max) : std::string("inf")) << ','
        << format_double(r.avg_sum_rate) << ',' << format_double(r.avg_sum_rate_design) << ','
        << format_double(r.sum_rate_std_error) << ',' << format_double(r.consumed_avg_power) << ','
        << format_double(r.lambda) << ',' << format_double(r.epochs_active_fraction) << ','
        << (r.constraint_active ? 1 : 0) << ',' << r.time_shared_epochs;
    for (double rate : r.per_user_rate) out << ',' << format_double(rate);
    out << '\n';
  }
}

void write_sweep(std::ostream& out, const RunConfig& config, const std::vector<SweepRow>& rows) {
  write_echo(out, config);
  out << "sweep_var,value,scheme,sum_rate_truth,sum_rate_design,consumption,lambda,active_fraction,k_users\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    out << to_string(row.variable) << ',' << format_double(row.value) << ',' << to_string(r.scheme) << ','
        << format_double(r.avg_sum_rate) << ',' << format_double(r.avg_sum_rate_design) << ','
        << format_double(r.consumed_avg_power) << ',' << format_double(r.lambda) << ','
        << format_double(r.epochs_active_fraction) << ',' << row.k_users << '\n';
  }
}

void write_plot_data(std::ostream& out, const std::vector<SweepRow>& rows) {
  std::vector<std::pair<int, Scheme>> series;
  for (const auto& row : rows) {
    const std::pair<int, Scheme> key{row.k_users, row.result.scheme};
    if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
  }
  bool first = true;
  for (const auto& [k, scheme] : series) {
    if (!first) out << "\n\n";
    first = false;
    out << "# scheme=" << to_string(scheme) << " k_users=" << k << '\n';
    for (const auto& row : rows)
      if (row.k_users == k && row.result.scheme == scheme)
        out << format_double(row.value) << ' ' << format_double(row.result.avg_sum_rate) << '\n';
  }
}

VerifySummary summarize(const std::vector<oracle::Certificate>& certs) {
  VerifySummary s;
  for (const auto& c : certs) {
    s.worst_relative_gap = std::max(s.worst_relative_gap, c.report.relative_gap());
    if (c.active) {
      ++s.active;
      s.worst_residual = std::max(s.worst_residual, oracle::max_residual(c.report.kkt_residuals));
    }
    if (!c.passed) ++s.failed;
  }
  return s;
}

void write_verify(std::ostream& out, std::uint64_t seed, const oracle::CertifyOptions& options,
                  const std::vector<oracle::CertCase>& cases, const std::vector<oracle::Certificate>& certs) {
  out << "# verify.seed=" << seed << '\n'
      << "# verify.samples=" << cases.size() << '\n'
      << "# verify.grid=" << options.grid.p0_points << 'x' << options.grid.tau0_points << '\n'
      << "# verify.zoom=" << (options.grid.zoom ? "true" : "false") << '\n'
      << "# verify.gap_tolerance=" << format_double(options.gap_tolerance) << '\n'
      << "# verify.residual_tolerance=" << format_double(options.residual_tolerance) << '\n';
  out << "sample,k_users,lambda,p_max,active,theorem_p0,theorem_tau0,best_p0,best_tau0,theorem_objective,"
         "best_objective,gap,relative_gap";
  for (const auto& key : kResidualKeys) out << ',' << key;
  out << ",passed\n";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& c = certs[i];
    const auto& rep = c.report;
    out << i << ',' << cases[i].x.size() << ',' << format_double(cases[i].lambda) << ','
        << (cases[i].p_max ? format_double(*cases[i].p_max) : std::string("inf")) << ',' << (c.active ? 1 : 0) << ','
        << format_double(c.allocation.p0) << ',' << format_double(c.allocation.tau0) << ','
        << format_double(rep.best_p0) << ',' << format_double(rep.best_tau0) << ','
        << format_double(rep.theorem_objective) << ',' << format_double(rep.best_objective) << ','
        << format_double(rep.gap) << ',' << format_double(rep.relative_gap());
    for (const auto& key : kResidualKeys) {
      const auto it = rep.kkt_residuals.find(key);
      out << ',' << (it == rep.kkt_residuals.end() ? std::string() : format_double(it->second));
    }
    out << ',' << (c.passed ? 1 : 0) << '\n';
  }
}

std::vector<std::string> read_header_comments(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (in.peek() == '#' && std::getline(in, line)) out.push_back(line.rfind("# ", 0) == 0 ? line.substr(2) : line.substr(1));
  return out;
}

}  // namespace wpcn::csv
