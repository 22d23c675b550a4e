// wpcn: power and time allocation for harvest-then-transmit networks.
//
//   wpcn solve  --config run.ini [--seed N] [--out results.csv]
//   wpcn sweep  --preset fig1b --out fig1b.csv
//   wpcn verify --samples 200 --grid 512

#include "wpcn/commands.hpp"
#include "wpcn/kernels.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Sum-rate optimal power and time allocation for wireless powered networks"};
  app.require_subcommand(1);

  wpcn::cli::CommandOptions opts;
  std::string config;
  std::string preset;
  std::uint64_t seed = 0;
  std::string out;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Run configuration file (INI)");
    sub->add_option("--preset", preset, "Built-in setup")->check(CLI::IsMember({"fig1a", "fig1b"}));
    sub->add_option("--seed", seed, "Fading seed (overrides the config)");
    sub->add_option("--out", out, "Output CSV path ('-' for stdout)");
  };

  auto* solve = app.add_subcommand("solve", "Run every configured scheme on one fading batch");
  common(solve);
  auto* sweep = app.add_subcommand("sweep", "Sweep p_avg or p_max and tabulate sum rates");
  common(sweep);
  auto* verify = app.add_subcommand("verify", "Certify closed-form allocations against a brute-force grid");
  common(verify);
  verify->add_option("--samples", opts.samples, "Random epochs to certify")->check(CLI::PositiveNumber);
  verify->add_option("--grid", opts.grid, "Grid points per axis")->check(CLI::Range(64, 1 << 16));
  verify->add_flag("--zoom", opts.zoom, "Rescan p0 around the coarse argmax at the same resolution");
  verify->add_option("--corrupt-tau0", opts.corrupt_tau0, "Perturb tau0 by this fraction (negative control)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  if (!config.empty()) opts.config_path = config;
  if (!preset.empty()) opts.preset = preset;
  if (app.got_subcommand(solve) ? solve->count("--seed") : app.got_subcommand(sweep) ? sweep->count("--seed")
                                                                                     : verify->count("--seed"))
    opts.seed = seed;
  if (!out.empty()) opts.out = out;

  if (app.got_subcommand(solve)) return wpcn::cli::cmd_solve(opts, std::cout, std::cerr);
  if (app.got_subcommand(sweep)) return wpcn::cli::cmd_sweep(opts, std::cout, std::cerr);
  return wpcn::cli::cmd_verify(opts, std::cout, std::cerr);
}
