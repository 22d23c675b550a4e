#pragma once

// Run configuration for the command-line tool. The file format is INI-style:
// [section] headers and key = value lines, ';' or '#' comments. All powers
// are in watts.
//
//   [network]   k_users, n0, p_avg, p_max (optional), epoch_duration
//   [profiles]  eta, p_sat, distance            defaults for every user
//   [profile.N] eta, p_sat, distance            overrides for user N (1-based)
//   [fading]    seed, epochs, distribution (rayleigh_power)
//   [truth]     kind = piecewise_linear | logistic | table
//               piecewise_linear: eta, p_sat (default: the profile of user 1)
//               logistic: plateau, steepness, shift, or slope + plateau for the preset
//               table: path (two-column CSV)
//   [run]       schemes = comma list, output
//   [sweep]     variable = p_avg | p_max, values = comma list,
//               peak_ratio (p_avg sweeps), k_values (optional comma list)

#include "wpcn/allocator.hpp"
#include "wpcn/eh_model.hpp"
#include "wpcn/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpcn {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  SweepVariable variable = SweepVariable::p_avg;
  std::vector<double> values;
  double peak_ratio = 0.0;
  std::vector<int> k_values;  // empty: only network.k_users
};

struct TruthConfig {
  EhCurve curve = PiecewiseLinearCurve{};
  std::string table_path;  // set for table curves
};

struct RunConfig {
  NetworkConfig network;
  std::vector<EhuProfile> profiles;
  std::uint64_t seed = 1;
  std::size_t epochs = 10000;
  TruthConfig truth;
  std::vector<Scheme> schemes{Scheme::theorem2, Scheme::baseline1, Scheme::baseline2};
  std::optional<SweepConfig> sweep;
  std::string output_path;

  FadingSpec fading() const { return FadingSpec::from_profiles(profiles, seed, epochs); }
  /// Checks cross-field constraints (profile count, baseline preconditions).
  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical "section.key=value" lines describing a resolved configuration.
/// The output path is left out so the same run written to two places gives
/// identical files.
std::vector<std::string> echo_lines(const RunConfig& config);

/// Inverse of echo_lines; accepts the lines with or without a leading "# ".
RunConfig parse_echo(const std::vector<std::string>& lines);

/// Built-in setups: "fig1a" (p_avg sweep, p_max = 15·p_avg, K in {3, 5})
/// and "fig1b" (K = 5, p_avg = 3 W, p_max from 5 to 35 W).
RunConfig preset(const std::string& name);

std::string format_double(double v);

}  // namespace wpcn
