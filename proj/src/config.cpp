#include "wpcn/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wpcn {

namespace pt = boost::property_tree;

namespace {

using Path = pt::ptree::path_type;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& text, const std::string& field) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (trim(text.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("field '" + field + "': expected a number, got '" + text + "'");
}

std::uint64_t to_uint(const std::string& text, const std::string& field) {
  std::uint64_t v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("field '" + field + "': expected a non-negative integer, got '" + text + "'");
  return v;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> find(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(Path(section, '/'));
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(Path(key, '/'));
    if (!v) return std::nullopt;
    return trim(*v);
  }
  std::string need(const std::string& section, const std::string& key) const {
    auto v = find(section, key);
    if (!v) throw ConfigError("missing field '" + section + "." + key + "'");
    return *v;
  }
  double number(const std::string& section, const std::string& key) const {
    return to_double(need(section, key), section + "." + key);
  }
  double number_or(const std::string& section, const std::string& key, double fallback) const {
    auto v = find(section, key);
    return v ? to_double(*v, section + "." + key) : fallback;
  }
  bool has_section(const std::string& section) const {
    return static_cast<bool>(tree_.get_child_optional(Path(section, '/')));
  }

 private:
  const pt::ptree& tree_;
};

std::vector<double> numbers(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(item, field));
  return out;
}

RunConfig from_tree(const pt::ptree& tree) {
  const Reader r(tree);
  RunConfig c;
  c.network.k_users = static_cast<int>(to_uint(r.need("network", "k_users"), "network.k_users"));
  c.network.n0 = r.number_or("network", "n0", 1e-10);
  c.network.p_avg = r.number("network", "p_avg");
  if (auto pm = r.find("network", "p_max")) c.network.p_max = to_double(*pm, "network.p_max");
  c.network.epoch_duration = r.number_or("network", "epoch_duration", 1.0);
  try {
    c.network.validate();
  } catch (const AllocationError& e) {
    throw ConfigError(e.what());
  }

  for (int k = 1; k <= c.network.k_users; ++k) {
    const std::string own = "profile." + std::to_string(k);
    const auto field = [&](const std::string& key) {
      if (auto v = r.find(own, key)) return to_double(*v, own + "." + key);
      if (auto v = r.find("profiles", key)) return to_double(*v, "profiles." + key);
      throw ConfigError("missing field '" + own + "." + key + "' (no default in [profiles])");
    };
    EhuProfile p{field("eta"), field("p_sat"), field("distance")};
    try {
      p.validate();
    } catch (const CurveError& e) {
      throw ConfigError(own + ": " + e.what());
    }
    c.profiles.push_back(p);
  }

  if (auto v = r.find("fading", "seed")) c.seed = to_uint(*v, "fading.seed");
  if (auto v = r.find("fading", "epochs")) c.epochs = to_uint(*v, "fading.epochs");
  if (auto v = r.find("fading", "distribution"); v && *v != "rayleigh_power")
    throw ConfigError("field 'fading.distribution': only rayleigh_power is supported");

  const std::string kind = r.find("truth", "kind").value_or("logistic");
  if (kind == "piecewise_linear") {
    c.truth.curve = PiecewiseLinearCurve{r.number_or("truth", "eta", c.profiles[0].eta),
                                         r.number_or("truth", "p_sat", c.profiles[0].p_sat)};
  } else if (kind == "logistic") {
    if (r.find("truth", "steepness")) {
      c.truth.curve = LogisticCurve{r.number("truth", "plateau"), r.number("truth", "steepness"),
                                    r.number_or("truth", "shift", 0.0)};
    } else {
      c.truth.curve = LogisticCurve::preset(r.number_or("truth", "slope", 0.2), r.number_or("truth", "plateau", 9.2e-6));
    }
  } else if (kind == "table") {
    c.truth.table_path = r.need("truth", "path");
    try {
      c.truth.curve = TableCurve::from_csv(c.truth.table_path);
    } catch (const CurveError& e) {
      throw ConfigError(std::string("truth.path: ") + e.what());
    }
  } else {
    throw ConfigError("field 'truth.kind': unknown curve kind '" + kind + "'");
  }

  if (auto v = r.find("run", "schemes")) {
    c.schemes.clear();
    for (const auto& name : split_list(*v)) {
      try {
        c.schemes.push_back(parse_scheme(name));
      } catch (const AllocationError& e) {
        throw ConfigError(std::string("field 'run.schemes': ") + e.what());
      }
    }
  } else if (!c.network.p_max) {
    c.schemes = {Scheme::theorem1};
  }
  c.output_path = r.find("run", "output").value_or("");

  if (r.has_section("sweep")) {
    SweepConfig s;
    const std::string var = r.need("sweep", "variable");
    if (var == "p_avg") {
      s.variable = SweepVariable::p_avg;
    } else if (var == "p_max") {
      s.variable = SweepVariable::p_max;
    } else {
      throw ConfigError("field 'sweep.variable': expected p_avg or p_max");
    }
    s.values = numbers(r.find("sweep", "values").value_or(""), "sweep.values");
    s.peak_ratio = r.number_or("sweep", "peak_ratio", 0.0);
    if (auto v = r.find("sweep", "k_values"))
      for (const auto& item : split_list(*v)) s.k_values.push_back(static_cast<int>(to_uint(item, "sweep.k_values")));
    c.sweep = s;
  }
  c.validate();
  return c;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void RunConfig::validate() const {
  try {
    network.validate();
  } catch (const AllocationError& e) {
    throw ConfigError(e.what());
  }
  if (profiles.size() != static_cast<std::size_t>(network.k_users))
    throw ConfigError("profile count does not match network.k_users");
  if (epochs < 1) throw ConfigError("field 'fading.epochs': must be >= 1");
  if (schemes.empty()) throw ConfigError("field 'run.schemes': no schemes");

  // Peak power and budget at every point that will be run.
  std::vector<std::pair<double, std::optional<double>>> points{{network.p_avg, network.p_max}};
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("field 'sweep.values': list is empty");
    for (std::size_t i = 1; i < sweep->values.size(); ++i)
      if (!(sweep->values[i] > sweep->values[i - 1]))
        throw ConfigError("field 'sweep.values': must be strictly increasing");
    for (int k : sweep->k_values)
      if (k < 1 || k > network.k_users) throw ConfigError("field 'sweep.k_values': entries must lie in 1..k_users");
    points.clear();
    for (double v : sweep->values) {
      if (!(v > 0.0)) throw ConfigError("field 'sweep.values': entries must be positive");
      if (sweep->variable == SweepVariable::p_avg)
        points.emplace_back(v, sweep->peak_ratio > 0.0 ? std::optional<double>(sweep->peak_ratio * v) : network.p_max);
      else
        points.emplace_back(network.p_avg, v);
    }
  }
  for (Scheme s : schemes) {
    if (s != Scheme::baseline1 && s != Scheme::baseline2) continue;
    for (const auto& [p_avg, p_max] : points) {
      if (!p_max) throw ConfigError(std::string(to_string(s)) + " requires network.p_max");
      if (s == Scheme::baseline2 && p_avg > *p_max)
        throw ConfigError("baseline2 requires p_avg <= p_max (p_avg=" + format_double(p_avg) +
                          ", p_max=" + format_double(*p_max) + ")");
    }
  }
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  return from_tree(tree);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

std::vector<std::string> echo_lines(const RunConfig& c) {
  std::vector<std::string> out;
  const auto put = [&](const std::string& key, const std::string& value) { out.push_back(key + "=" + value); };
  put("network.k_users", std::to_string(c.network.k_users));
  put("network.n0", format_double(c.network.n0));
  put("network.p_avg", format_double(c.network.p_avg));
  if (c.network.p_max) put("network.p_max", format_double(*c.network.p_max));
  put("network.epoch_duration", format_double(c.network.epoch_duration));
  for (std::size_t k = 0; k < c.profiles.size(); ++k) {
    const std::string sec = "profile." + std::to_string(k + 1) + ".";
    put(sec + "eta", format_double(c.profiles[k].eta));
    put(sec + "p_sat", format_double(c.profiles[k].p_sat));
    put(sec + "distance", format_double(c.profiles[k].distance));
  }
  put("fading.seed", std::to_string(c.seed));
  put("fading.epochs", std::to_string(c.epochs));
  put("fading.distribution", "rayleigh_power");
  put("truth.kind", curve_kind(c.truth.curve));
  if (const auto* p = std::get_if<PiecewiseLinearCurve>(&c.truth.curve)) {
    put("truth.eta", format_double(p->eta));
    put("truth.p_sat", format_double(p->p_sat));
  } else if (const auto* l = std::get_if<LogisticCurve>(&c.truth.curve)) {
    put("truth.plateau", format_double(l->plateau));
    put("truth.steepness", format_double(l->steepness));
    put("truth.shift", format_double(l->shift));
  } else {
    put("truth.path", c.truth.table_path);
  }
  std::string schemes;
  for (std::size_t i = 0; i < c.schemes.size(); ++i) schemes += (i ? "," : "") + std::string(to_string(c.schemes[i]));
  put("run.schemes", schemes);
  if (c.sweep) {
    put("sweep.variable", std::string(to_string(c.sweep->variable)));
    std::string values;
    for (std::size_t i = 0; i < c.sweep->values.size(); ++i) values += (i ? "," : "") + format_double(c.sweep->values[i]);
    put("sweep.values", values);
    put("sweep.peak_ratio", format_double(c.sweep->peak_ratio));
    if (!c.sweep->k_values.empty()) {
      std::string ks;
      for (std::size_t i = 0; i < c.sweep->k_values.size(); ++i) ks += (i ? "," : "") + std::to_string(c.sweep->k_values[i]);
      put("sweep.k_values", ks);
    }
  }
  return out;
}

RunConfig parse_echo(const std::vector<std::string>& lines) {
  pt::ptree tree;
  for (auto line : lines) {
    if (line.rfind("# ", 0) == 0) line = line.substr(2);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string path = line.substr(0, eq);
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) continue;
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    auto child = tree.get_child_optional(Path(section, '/'));
    if (!child) child = tree.add_child(Path(section, '/'), pt::ptree());
    child->put(Path(key, '/'), line.substr(eq + 1));
  }
  return from_tree(tree);
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.network.k_users = 5;
  c.network.n0 = 1e-10;
  c.profiles.assign(5, EhuProfile{0.2, 9.2e-6, 10.0});
  c.seed = 2018;
  c.epochs = 10000;
  c.truth.curve = LogisticCurve::preset();
  c.schemes = {Scheme::theorem2, Scheme::baseline1, Scheme::baseline2};
  SweepConfig s;
  if (name == "fig1a") {
    c.network.p_avg = 0.25;
    c.network.p_max = 3.75;
    s.variable = SweepVariable::p_avg;
    s.values = {0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    s.peak_ratio = 15.0;
    s.k_values = {3, 5};
  } else if (name == "fig1b") {
    c.network.p_avg = 3.0;
    c.network.p_max = 35.0;
    s.variable = SweepVariable::p_max;
    s.values = {5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig1a or fig1b)");
  }
  c.sweep = s;
  c.validate();
  return c;
}

}  // namespace wpcn
