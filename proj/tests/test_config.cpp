#include "wpcn/config.hpp"

#include <doctest.h>

#include <sstream>

using namespace wpcn;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const std::string kMinimal = R"(
[network]
k_users = 1
p_avg = 1.0

[profiles]
eta = 0.2
p_sat = 9.2e-6
distance = 10
)";

}  // namespace

TEST_CASE("minimal config and defaults") {
  const auto c = parse(kMinimal);
  CHECK(c.network.k_users == 1);
  CHECK(c.network.n0 == 1e-10);
  CHECK_FALSE(c.network.p_max.has_value());
  CHECK(c.profiles.size() == 1);
  CHECK(c.seed == 1);
  CHECK(c.epochs == 10000);
  CHECK(curve_kind(c.truth.curve) == "logistic");
  // Without a peak only the unconstrained rule makes sense.
  CHECK(c.schemes == std::vector<Scheme>{Scheme::theorem1});
  CHECK_FALSE(c.sweep.has_value());
  CHECK(c.fading().mean_gain == std::vector<double>{1e-6});
}

TEST_CASE("per-user overrides take precedence over defaults") {
  const auto c = parse(R"(
[network]
k_users = 2
p_avg = 1
p_max = 10
[profiles]
eta = 0.2
p_sat = 9.2e-6
distance = 10
[profile.2]
eta = 0.4
distance = 5
[truth]
kind = piecewise_linear
)");
  CHECK(c.profiles[0].eta == 0.2);
  CHECK(c.profiles[1].eta == 0.4);
  CHECK(c.profiles[1].p_sat == 9.2e-6);
  CHECK(c.profiles[1].distance == 5.0);
  CHECK(c.schemes.size() == 3);
  const auto& pw = std::get<PiecewiseLinearCurve>(c.truth.curve);
  CHECK(pw.eta == 0.2);
}

TEST_CASE("missing profile entry names the field") {
  const auto msg = error_of(R"(
[network]
k_users = 2
p_avg = 1
[profile.1]
eta = 0.2
p_sat = 9.2e-6
distance = 10
[profile.2]
p_sat = 9.2e-6
distance = 10
)");
  CHECK(msg.find("profile.2.eta") != std::string::npos);
  CHECK(error_of("[network]\np_avg = 1\n").find("network.k_users") != std::string::npos);
}

TEST_CASE("baseline 2 requires p_avg <= p_max at every point") {
  const std::string base = R"(
[network]
k_users = 1
p_avg = 5
p_max = 2
[profiles]
eta = 0.2
p_sat = 9.2e-6
distance = 10
[run]
schemes = baseline2
)";
  CHECK(error_of(base).find("baseline2") != std::string::npos);
  CHECK(error_of(kMinimal + "[run]\nschemes = baseline1\n").find("p_max") != std::string::npos);
  // Sweep points are checked too.
  const std::string sweep = R"(
[network]
k_users = 1
p_avg = 1
p_max = 2
[profiles]
eta = 0.2
p_sat = 9.2e-6
distance = 10
[run]
schemes = baseline2
[sweep]
variable = p_max
values = 0.5, 4
)";
  CHECK(error_of(sweep).find("baseline2") != std::string::npos);
}

TEST_CASE("malformed values are rejected") {
  CHECK(error_of(kMinimal + "[sweep]\nvariable = p_avg\nvalues =\n").find("sweep.values") != std::string::npos);
  CHECK(error_of(kMinimal + "[sweep]\nvariable = p_avg\nvalues = 2, 1\n").find("increasing") != std::string::npos);
  CHECK(error_of(kMinimal + "[sweep]\nvariable = k\nvalues = 1\n").find("sweep.variable") != std::string::npos);
  CHECK(error_of(kMinimal + "[truth]\nkind = cubic\n").find("truth.kind") != std::string::npos);
  CHECK(error_of(kMinimal + "[run]\nschemes = greedy\n").find("run.schemes") != std::string::npos);
  CHECK(error_of(kMinimal + "[fading]\nseed = -3\n").find("fading.seed") != std::string::npos);
  CHECK(error_of(kMinimal + "[fading]\nepochs = 0\n").find("fading.epochs") != std::string::npos);
  CHECK(error_of(kMinimal + "[fading]\ndistribution = rician\n").find("distribution") != std::string::npos);
  CHECK_FALSE(error_of("[network]\nk_users = 1\np_avg = abc\n").empty());
  CHECK_FALSE(error_of("[network]\nk_users = 1\np_avg = -1\n[profiles]\neta=0.2\np_sat=1e-6\ndistance=10\n").empty());
  CHECK_FALSE(error_of("[network]\nk_users = 1\np_avg = 1\n[profiles]\neta=1.2\np_sat=1e-6\ndistance=10\n").empty());
  CHECK_FALSE(error_of("[network\nk_users = 1\n").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("truth curve kinds") {
  auto c = parse(kMinimal + "[truth]\nkind = logistic\nplateau = 1e-5\nsteepness = 3e4\nshift = 1e-5\n");
  const auto& l = std::get<LogisticCurve>(c.truth.curve);
  CHECK(l.steepness == 3e4);
  CHECK(l.shift == 1e-5);
  c = parse(kMinimal + "[truth]\nkind = table\npath = " + std::string(WPCN_TEST_DATA) + "/curve.csv\n");
  CHECK(std::get<TableCurve>(c.truth.curve).p_in.size() == 4);
  CHECK(error_of(kMinimal + "[truth]\nkind = table\npath = /nonexistent.csv\n").find("truth.path") !=
        std::string::npos);
}

TEST_CASE("echo lines round-trip") {
  std::vector<RunConfig> configs{preset("fig1a"), preset("fig1b"), parse(kMinimal)};
  configs.push_back(parse(kMinimal + "[truth]\nkind = table\npath = " + std::string(WPCN_TEST_DATA) +
                          "/curve.csv\n[run]\noutput = out.csv\n"));
  auto odd = preset("fig1b");
  odd.profiles[2].eta = 0.123456789012345678;
  odd.network.n0 = 3.3e-11;
  odd.seed = 18446744073709551615ULL;
  configs.push_back(odd);
  for (const auto& c : configs) {
    const auto lines = echo_lines(c);
    const auto back = parse_echo(lines);
    CHECK(echo_lines(back) == lines);
    CHECK(back.profiles.size() == c.profiles.size());
    for (std::size_t k = 0; k < c.profiles.size(); ++k) CHECK(back.profiles[k].eta == c.profiles[k].eta);
    CHECK(back.seed == c.seed);
  }
  std::vector<std::string> commented;
  for (const auto& l : echo_lines(odd)) commented.push_back("# " + l);
  CHECK(echo_lines(parse_echo(commented)) == echo_lines(odd));
}

TEST_CASE("presets") {
  const auto a = preset("fig1a");
  REQUIRE(a.sweep);
  CHECK(a.sweep->variable == SweepVariable::p_avg);
  CHECK(a.sweep->peak_ratio == 15.0);
  CHECK(a.sweep->k_values == std::vector<int>{3, 5});
  CHECK(a.network.k_users == 5);
  for (const auto& p : a.profiles) {
    CHECK(p.eta == 0.2);
    CHECK(p.p_sat == 9.2e-6);
  }
  const auto b = preset("fig1b");
  REQUIRE(b.sweep);
  CHECK(b.sweep->variable == SweepVariable::p_max);
  CHECK(b.network.p_avg == 3.0);
  CHECK(b.sweep->values.front() == 5.0);
  CHECK(b.sweep->values.back() == 35.0);
  CHECK_THROWS_AS(preset("fig2"), ConfigError);
}

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(3.0) == "3");
  CHECK(format_double(1e-10) == "1e-10");
  for (double v : {0.1, 1.0 / 3.0, 9.2e-6, 2.5118864315095822e-5, 1e300})
    CHECK(std::stod(format_double(v)) == v);
}
