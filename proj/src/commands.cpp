#include "wpcn/commands.hpp"

#include "wpcn/config.hpp"
#include "wpcn/csv.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/simulator.hpp"

#include <fstream>
#include <functional>
#include <ostream>

namespace wpcn::cli {

namespace {

RunConfig resolve(const CommandOptions& o) {
  if (o.preset && o.config_path) throw ConfigError("use either --preset or --config, not both");
  RunConfig c;
  if (o.preset) {
    c = preset(*o.preset);
  } else if (o.config_path) {
    c = load_config(*o.config_path);
  } else {
    throw ConfigError("a --config file or a --preset is required");
  }
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_path = *o.out;
  return c;
}

// Writes through `body` to the configured path, or to `fallback` for "" / "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  body(file);
  if (!file) throw ConfigError("write failed for " + path);
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int cmd_solve(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig c = resolve(options);
    if (c.sweep) throw ConfigError("config has a [sweep] section; use the sweep command");
    const auto channels = generate_epochs(c.fading(), c.network.n0);
    const auto batch = prepare_epochs(channels, c.profiles, c.network.n0);
    std::vector<SchemeResult> results;
    for (Scheme s : c.schemes) results.push_back(run_scheme(batch, c.profiles, c.network, s, c.truth.curve));
    emit(c.output_path, out, [&](std::ostream& os) { csv::write_solve(os, c, results); });
    return 0;
  });
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig c = resolve(options);
    if (!c.sweep) throw ConfigError("config has no [sweep] section");
    std::vector<int> ks = c.sweep->k_values;
    if (ks.empty()) ks.push_back(c.network.k_users);

    std::vector<SweepRow> rows;
    for (int k : ks) {
      const std::vector<EhuProfile> profiles(c.profiles.begin(), c.profiles.begin() + k);
      SweepSpec spec;
      spec.variable = c.sweep->variable;
      spec.values = c.sweep->values;
      spec.fixed = c.network;
      spec.fixed.k_users = k;
      spec.schemes = c.schemes;
      spec.truth = c.truth.curve;
      spec.peak_ratio = c.sweep->peak_ratio;
      const auto part = run_sweep(spec, profiles, FadingSpec::from_profiles(profiles, c.seed, c.epochs));
      rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(c.output_path, out, [&](std::ostream& os) { csv::write_sweep(os, c, rows); });
    if (!c.output_path.empty() && c.output_path != "-")
      emit(c.output_path + ".plot.dat", out, [&](std::ostream& os) { csv::write_plot_data(os, rows); });
    return 0;
  });
}

int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.samples < 1) throw ConfigError("--samples must be >= 1");
    if (options.grid < 64) throw ConfigError("--grid must be >= 64");
    std::uint64_t seed = 1;
    std::string path = options.out.value_or("");
    if (options.config_path || options.preset) {
      const RunConfig c = resolve(options);
      seed = c.seed;
      path = c.output_path;
    }
    if (options.seed) seed = *options.seed;

    oracle::CertifyOptions co;
    co.grid = {options.grid, options.grid, options.zoom};
    co.corrupt_tau0 = options.corrupt_tau0;
    const auto cases = oracle::certification_cases(seed, options.samples);
    std::vector<oracle::Certificate> certs;
    certs.reserve(cases.size());
    for (const auto& c : cases) certs.push_back(oracle::certify(c, co));

    const auto summary = csv::summarize(certs);
    // The report goes to the file when one is given, so the summary can use stdout.
    std::ostream& log = (path.empty() || path == "-") ? err : out;
    emit(path, out, [&](std::ostream& os) { csv::write_verify(os, seed, co, cases, certs); });
    log << "verify: samples=" << cases.size() << " active=" << summary.active << " grid=" << co.grid.p0_points
        << "x" << co.grid.tau0_points << " worst_relative_gap=" << format_double(summary.worst_relative_gap)
        << " worst_kkt_residual=" << format_double(summary.worst_residual) << " failed=" << summary.failed << '\n';
    return summary.failed == 0 ? 0 : 1;
  });
}

}  // namespace wpcn::cli
