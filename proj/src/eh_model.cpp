#include "wpcn/eh_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wpcn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double logistic_value(const LogisticCurve& c, double p_in) {
  const double anchor = std::tanh(0.5 * c.steepness * c.shift);
  return c.plateau * (std::tanh(0.5 * c.steepness * (p_in - c.shift)) + anchor) / (1.0 + anchor);
}

double table_value(const TableCurve& c, double p_in) {
  const auto& xs = c.p_in;
  const auto& ys = c.p_h;
  if (p_in >= xs.back()) return ys.back();
  if (p_in <= xs.front()) return xs.front() > 0.0 ? ys.front() * (p_in / xs.front()) : ys.front();
  const auto it = std::upper_bound(xs.begin(), xs.end(), p_in);
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double w = (p_in - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace

void EhuProfile::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw CurveError("profile: eta must lie in (0, 1)");
  if (!(p_sat > 0.0)) throw CurveError("profile: p_sat must be positive");
  if (!(distance > 0.0)) throw CurveError("profile: distance must be positive");
}

LogisticCurve LogisticCurve::preset(double slope, double plateau) {
  // With shift 0 the curve is plateau·tanh(a·p/2), so the slope at the origin is a·plateau/2.
  return LogisticCurve{plateau, 2.0 * slope / plateau, 0.0};
}

TableCurve TableCurve::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CurveError("cannot open EH table " + path.string());
  TableCurve table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a = 0.0;
    double b = 0.0;
    if (!(row >> a >> b)) {
      if (table.p_in.empty()) continue;  // header line
      throw CurveError(path.string() + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    table.p_in.push_back(a);
    table.p_h.push_back(b);
  }
  table.validate();
  return table;
}

void TableCurve::validate() const {
  if (p_in.empty() || p_in.size() != p_h.size()) throw CurveError("table curve: need matching non-empty columns");
  if (p_in.front() < 0.0 || p_h.front() < 0.0) throw CurveError("table curve: negative entries");
  for (std::size_t i = 1; i < p_in.size(); ++i) {
    if (!(p_in[i] > p_in[i - 1])) throw CurveError("table curve: incident power must be strictly increasing");
    if (p_h[i] < p_h[i - 1]) throw CurveError("table curve: harvested power must be non-decreasing");
  }
}

std::string curve_kind(const EhCurve& curve) {
  return std::visit(Overloaded{[](const PiecewiseLinearCurve&) { return std::string("piecewise_linear"); },
                               [](const LogisticCurve&) { return std::string("logistic"); },
                               [](const TableCurve&) { return std::string("table"); }},
                    curve);
}

double harvested_power(const EhCurve& curve, double p_in) {
  return std::visit(Overloaded{[p_in](const PiecewiseLinearCurve& c) { return std::min(c.eta * p_in, c.p_sat); },
                               [p_in](const LogisticCurve& c) { return logistic_value(c, p_in); },
                               [p_in](const TableCurve& c) { return table_value(c, p_in); }},
                    curve);
}

double saturation_level(const EhCurve& curve) {
  return std::visit(Overloaded{[](const PiecewiseLinearCurve& c) { return c.p_sat; },
                               [](const LogisticCurve& c) { return c.plateau; },
                               [](const TableCurve& c) { return c.p_h.back(); }},
                    curve);
}

double harvested_energy(const EhuProfile& profile, double x, double n0, double p0, double tau0, double t) {
  return t * harvested_power(PiecewiseLinearCurve{profile.eta, profile.p_sat}, n0 * x * p0) * tau0;
}

EhuProfile PiecewiseFit::to_profile(double distance) const {
  if (degenerate_slope) throw CurveError("piecewise fit: zero slope below the knee");
  EhuProfile p{eta, p_sat, distance};
  p.validate();
  return p;
}

PiecewiseFit fit_piecewise(const EhCurve& curve, double knee_input) {
  if (!(knee_input > 0.0)) throw CurveError("piecewise fit: knee input must be positive");
  if (const auto* table = std::get_if<TableCurve>(&curve)) {
    const std::size_t n = table->p_h.size();
    if (n < 2 || table->p_h[n - 1] != table->p_h[n - 2])
      throw CurveError("piecewise fit: table does not reach a plateau");
  }

  // Midpoint samples on [0, knee_input]; slope of the least-squares line through the origin.
  constexpr int kSamples = 1000;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double p = knee_input * (i + 0.5) / kSamples;
    sxy += p * harvested_power(curve, p);
    sxx += p * p;
  }
  PiecewiseFit fit;
  fit.eta = sxy / sxx;
  fit.p_sat = saturation_level(curve);
  fit.degenerate_slope = !(fit.eta > 0.0);
  return fit;
}

}  // namespace wpcn
