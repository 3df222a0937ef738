// Serial reference vs OpenMP kernels: wall time and largest deviation.
#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <vector>

#include "quench/eigen.hpp"
#include "quench/kernels.hpp"
#include "quench/propagate.hpp"

namespace {

using cplx = std::complex<double>;
using clock_type = std::chrono::steady_clock;

double seconds(const std::function<void()>& body, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = clock_type::now();
    body();
    best = std::min(best, std::chrono::duration<double>(clock_type::now() - start).count());
  }
  return best;
}

double max_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
    peak = std::max(peak, std::abs(a[i]));
  }
  return peak > 0.0 ? worst / peak : worst;
}

void report(const char* name, std::size_t points, double serial, double parallel, double deviation) {
  std::printf("%-28s %8zu %12.4f %12.4f %9.2fx %12.3e\n", name, points, serial, parallel,
              serial / parallel, deviation);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const quench::PhysicalParams params;
  const quench::Eigenstate state = quench::make_eigenstate(6, params);

  std::printf("threads: %d, best of %d\n", quench::kernels::max_threads(), repeats);
  std::printf("%-28s %8s %12s %12s %10s %12s\n", "kernel", "points", "serial[s]", "parallel[s]",
              "speedup", "rel.dev");

  {
    const quench::SpaceGrid grid = quench::SpaceGrid::from_range(-60.0, 80.0, 0.05);
    const std::vector<double> xs = grid.points();
    std::vector<cplx> a(xs.size()), b(xs.size());
    const double ts = seconds([&] { quench::kernels::serial::sample_eigenstate(state, params, xs, a.data()); }, repeats);
    const double tp = seconds([&] { quench::kernels::parallel::sample_eigenstate(state, params, xs, b.data()); }, repeats);
    report("sample_eigenstate", xs.size(), ts, tp, max_deviation(a, b));
  }

  for (quench::Scenario s : {quench::Scenario::A, quench::Scenario::B, quench::Scenario::C}) {
    const double t = 5.0;
    const quench::SpaceGrid grid = quench::suggest_grid(s, 6, t, params);
    std::vector<double> xs = grid.points();
    if (xs.size() > 2000) {
      std::vector<double> thinned;
      const std::size_t stride = xs.size() / 2000 + 1;
      for (std::size_t i = 0; i < xs.size(); i += stride) thinned.push_back(xs[i]);
      xs.swap(thinned);
    }
    quench::DirectSettings serial_settings, parallel_settings;
    serial_settings.backend = quench::Backend::serial;
    parallel_settings.backend = quench::Backend::parallel;
    std::vector<cplx> a, b;
    const double ts = seconds([&] { a = quench::evolve_direct_at(s, state, t, xs, params, serial_settings); }, repeats);
    const double tp = seconds([&] { b = quench::evolve_direct_at(s, state, t, xs, params, parallel_settings); }, repeats);
    char name[64];
    std::snprintf(name, sizeof name, "direct scenario %s t=%g", quench::to_string(s), t);
    report(name, xs.size(), ts, tp, max_deviation(a, b));
  }

  {
    const double t = 5.0;
    const quench::SpaceGrid grid = quench::SpaceGrid::from_range(-80.0, 100.0, 0.5);
    const std::vector<double> xs = grid.points();
    quench::ErfcSettings serial_settings, parallel_settings;
    serial_settings.backend = quench::Backend::serial;
    std::vector<cplx> a, b;
    const double ts = seconds([&] { a = quench::evolve_erfc_at(quench::Scenario::B, 6, t, xs, params, serial_settings); }, repeats);
    const double tp = seconds([&] { b = quench::evolve_erfc_at(quench::Scenario::B, 6, t, xs, params, parallel_settings); }, repeats);
    report("k integral scenario b t=5", xs.size(), ts, tp, max_deviation(a, b));
  }
  return 0;
}
