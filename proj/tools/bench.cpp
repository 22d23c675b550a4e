// Serial reference vs OpenMP kernels on one fading batch.
//
//   wpcn_bench [--epochs N] [--repeats N]

#include "wpcn/dual.hpp"
#include "wpcn/kernels.hpp"
#include "wpcn/oracle.hpp"
#include "wpcn/simulator.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

using wpcn::kernels::Exec;

double time_ms(const std::function<void()>& f, int repeats) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void report(const char* name, const std::function<void(Exec)>& f, int repeats) {
  const double serial = time_ms([&] { f(Exec::serial); }, repeats);
  const double parallel = time_ms([&] { f(Exec::parallel); }, repeats);
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP timings of the batch kernels"};
  std::size_t epochs = 20000;
  int repeats = 3;
  app.add_option("--epochs", epochs, "Fading epochs in the batch")->check(CLI::PositiveNumber);
  app.add_option("--repeats", repeats, "Timed repetitions per kernel")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  std::printf("threads=%d epochs=%zu repeats=%d\n", omp_get_max_threads(), epochs, repeats);

  wpcn::NetworkConfig cfg;
  cfg.k_users = 5;
  cfg.p_avg = 3.0;
  cfg.p_max = 35.0;
  const std::vector<wpcn::EhuProfile> profiles(5, wpcn::EhuProfile{0.2, 9.2e-6, 10.0});
  const auto fading = wpcn::FadingSpec::from_profiles(profiles, 7, epochs);
  const auto channels = wpcn::generate_epochs(fading, cfg.n0);
  const auto batch = wpcn::prepare_epochs(channels, profiles, cfg.n0);
  const double lambda = wpcn::find_lambda(batch, cfg, wpcn::Scheme::theorem2).lambda;

  report("generate_epochs", [&](Exec e) { (void)wpcn::generate_epochs(fading, cfg.n0, e); }, repeats);
  report("prepare_epochs", [&](Exec e) { (void)wpcn::prepare_epochs(channels, profiles, cfg.n0, e); }, repeats);
  report("allocate_batch", [&](Exec e) {
    (void)wpcn::kernels::allocate_batch(wpcn::Scheme::theorem2, batch, lambda, cfg, e);
  }, repeats);
  report("mean_consumption", [&](Exec e) {
    (void)wpcn::kernels::mean_consumption(wpcn::Scheme::theorem2, batch, lambda, cfg, e);
  }, repeats);
  report("find_lambda", [&](Exec e) { (void)wpcn::find_lambda(batch, cfg, wpcn::Scheme::theorem2, e); }, 1);

  const auto cases = wpcn::oracle::certification_cases(11, 8);
  wpcn::oracle::CertifyOptions opts;
  opts.grid = {1024, 1024};
  report("grid_search 8x1024^2", [&](Exec e) {
    for (const auto& c : cases) (void)wpcn::oracle::certify(c, opts, e);
  }, 1);
  return 0;
}
