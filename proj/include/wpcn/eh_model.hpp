#pragma once

#include <cmath>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wpcn {

/// Per-user harvesting parameters. Powers in watts, distance in metres.
struct EhuProfile {
  double eta = 0.2;      // linear-regime conversion efficiency, 0 < eta < 1
  double p_sat = 9.2e-6; // saturation harvested power
  double distance = 10.0;

  void validate() const;
};

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// min(eta·p_in, p_sat).
struct PiecewiseLinearCurve {
  double eta = 0.2;
  double p_sat = 9.2e-6;
};

/// Zero-anchored logistic saturation curve
///   p_h = plateau·(sigma(a·(p_in - b)) - sigma(-a·b)) / (1 - sigma(-a·b)).
struct LogisticCurve {
  double plateau = 9.2e-6;
  double steepness = 1.0;  // a, 1/W
  double shift = 0.0;      // b, W

  /// Preset with plateau 9.2 uW and small-signal slope 0.2.
  static LogisticCurve preset(double slope = 0.2, double plateau = 9.2e-6);
};

/// Measured characteristic, linearly interpolated. Anchored at the origin
/// below the first sample and held at the last value above the last sample.
struct TableCurve {
  std::vector<double> p_in;
  std::vector<double> p_h;

  static TableCurve from_csv(const std::filesystem::path& path);
  void validate() const;
};

using EhCurve = std::variant<PiecewiseLinearCurve, LogisticCurve, TableCurve>;

std::string curve_kind(const EhCurve& curve);

double harvested_power(const EhCurve& curve, double p_in);

/// Highest harvested power the curve can deliver.
double saturation_level(const EhCurve& curve);

/// T·min(N0·eta·x·p0, P_H)·tau0 for the piecewise-linear design model.
double harvested_energy(const EhuProfile& profile, double x, double n0, double p0, double tau0,
                        double t = 1.0);

struct PiecewiseFit {
  double eta = 0.0;
  double p_sat = 0.0;
  bool degenerate_slope = false;

  /// Throws CurveError if the fitted slope is degenerate.
  EhuProfile to_profile(double distance) const;
};

/// Least-squares slope through the origin on [0, knee_input] and the plateau
/// of the curve. Table curves must end on a flat segment.
PiecewiseFit fit_piecewise(const EhCurve& curve, double knee_input);

/// -16 dBm in watts.
inline constexpr double kDefaultKneeInput = 2.5118864315095822e-5;

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

}  // namespace wpcn
