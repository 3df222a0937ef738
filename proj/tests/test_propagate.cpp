#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quench/errors.hpp"
#include "quench/kernels.hpp"
#include "quench/propagate.hpp"

using namespace quench;
using cplx = std::complex<double>;

namespace {

const PhysicalParams kDefaults;
const PhysicalParams kFree(1.0, 0.5, 0.0);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::usage;
}

double peak_density(const std::vector<cplx>& v) {
  double peak = 0.0;
  for (const cplx& z : v) peak = std::max(peak, std::norm(z));
  return peak;
}

double max_density_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::fabs(std::norm(a[i]) - std::norm(b[i])));
  return gap;
}

// L2 distance on x > 0 between psi and the eigenstate it started from.
double distance_to_initial(const WaveField& psi, int n) {
  const WaveField phi = cutoff_state(make_eigenstate(n, kDefaults), kDefaults, psi.grid);
  std::vector<double> d(psi.grid.count);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(psi.values[i] - phi.values[i]);
  return std::sqrt(trapezoid(d, psi.grid.dx));
}

SpaceGrid thinned(const SpaceGrid& g, std::size_t every) {
  SpaceGrid out = g;
  out.dx = g.dx * static_cast<double>(every);
  out.count = (g.count - 1) / every + 1;
  return out;
}

const char* name(Scenario s) { return to_string(s); }

}  // namespace

TEST_CASE("kernel modulus and free phase") {
  const double modulus = std::sqrt(0.5 / (2.0 * std::numbers::pi));
  CHECK(modulus == doctest::Approx(0.28209479).epsilon(1e-8));
  for (double x : {-7.0, 0.0, 2.5}) {
    for (double xs : {0.0, 1.0, 13.0}) {
      CHECK(std::abs(kernel_linear(x, 1.0, xs, kDefaults)) == doctest::Approx(modulus).epsilon(1e-14));
    }
  }
  const cplx pref = modulus * std::polar(1.0, -std::numbers::pi / 4.0);
  const cplx phase = kernel_linear(3.0, 1.0, 1.0, kFree) / pref;
  CHECK(std::abs(phase - std::polar(1.0, 1.0)) < 1e-14);
  CHECK(kind_of([] { kernel_linear(1.0, 0.0, 1.0, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([] { kernel_linear(1.0, -1.0, 1.0, kDefaults); }) == ErrorKind::domain);
}

TEST_CASE("kernel composition over two half steps") {
  // int G(x, t | y) G(y, t | x') dy = G(x, 2t | x'), y window tapered smoothly
  const double t = 1.0;
  for (const PhysicalParams& p : {kFree, kDefaults}) {
    for (auto [x, xs] : {std::pair{1.0, 2.0}, std::pair{-3.0, 4.0}}) {
      const double beta = p.mass() / (2.0 * p.hbar() * t);
      const double center = 0.5 * (x + xs) + p.k_slope() * t / (4.0 * beta);
      const double flat = 25.0, edge = 40.0, dy = 0.002;
      cplx sum = 0.0;
      for (double u = -edge; u <= edge + 1e-12; u += dy) {
        const double w = std::fabs(u) < flat
                             ? 1.0
                             : 0.5 * (1.0 + std::cos(std::numbers::pi * (std::fabs(u) - flat) / (edge - flat)));
        const double y = center + u;
        sum += w * kernel_linear(x, t, y, p) * kernel_linear(y, t, xs, p);
      }
      sum *= dy;
      const cplx expected = kernel_linear(x, 2.0 * t, xs, p);
      CHECK(std::abs(sum - expected) / std::abs(expected) < 1e-3);
    }
  }
}

TEST_CASE("half-space kernel") {
  for (double t : {0.1, 1.0, 30.0}) {
    for (double xs : {0.0, 0.5, 9.0}) CHECK(kernel_halfspace(0.0, t, xs, kDefaults) == cplx(0.0, 0.0));
  }
  const cplx expected = kernel_linear(1.0, 1.0, 1.0, kFree) - kernel_linear(-1.0, 1.0, 1.0, kFree);
  CHECK(std::abs(kernel_halfspace(1.0, 1.0, 1.0, kDefaults) - expected) < 1e-15);
  // odd under x -> -x before the restriction
  for (double x : {0.3, 2.0, 7.5}) {
    const cplx plus = kernel_linear(x, 2.0, 1.5, kFree) - kernel_linear(-x, 2.0, 1.5, kFree);
    const cplx minus = kernel_linear(-x, 2.0, 1.5, kFree) - kernel_linear(x, 2.0, 1.5, kFree);
    CHECK(std::abs(plus + minus) == 0.0);
    CHECK(std::abs(kernel_halfspace(x, 2.0, 1.5, kDefaults) - plus) < 1e-15);
  }
  CHECK(kind_of([] { kernel_halfspace(-0.1, 1.0, 1.0, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([] { kernel_halfspace(0.1, 1.0, -1.0, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([] { kernel_halfspace(0.1, 0.0, 1.0, kDefaults); }) == ErrorKind::domain);
}

TEST_CASE("direct evolution at a tiny time returns the initial state") {
  const Eigenstate e = make_eigenstate(2, kDefaults);
  const SpaceGrid grid = SpaceGrid::from_range(0.0, eigenstate_support_end(e, kDefaults), 0.01);
  for (Scenario s : {Scenario::A, Scenario::B, Scenario::C}) {
    CAPTURE(name(s));
    QuadratureReport report;
    const WaveField psi = evolve_direct(s, e, 1e-6, grid, kDefaults, {}, &report);
    CHECK(report.rule == "filon");
    CHECK(distance_to_initial(psi, 2) < 1e-3);
  }
  const WaveField at_zero = evolve_direct(Scenario::B, e, 0.0, grid, kDefaults);
  CHECK(distance_to_initial(at_zero, 2) == 0.0);
}

TEST_CASE("short-time recovery of the eigenstate") {
  const Eigenstate e = make_eigenstate(1, kDefaults);
  const SpaceGrid grid = SpaceGrid::from_range(0.0, eigenstate_support_end(e, kDefaults), 0.005);
  const double d3 = distance_to_initial(evolve_direct(Scenario::B, e, 1e-3, grid, kDefaults), 1);
  const double d4 = distance_to_initial(evolve_direct(Scenario::B, e, 1e-4, grid, kDefaults), 1);
  CHECK(d4 < d3);
  CHECK(d3 < 1e-2);
  const double exponent = std::log10(d3 / d4);
  CHECK(exponent > 0.5);
  CHECK(exponent < 1.0);
}

TEST_CASE("free evolution keeps the norm") {
  const SpaceGrid grid = suggest_grid(Scenario::B, 6, 10.0, kDefaults);
  const WaveField psi = evolve_direct(Scenario::B, make_eigenstate(6, kDefaults), 10.0, grid, kDefaults);
  CHECK(std::fabs(norm(psi) - 1.0) < 1e-3);
}

TEST_CASE("unitarity across scenarios for n = 3") {
  for (Scenario s : {Scenario::A, Scenario::B, Scenario::C}) {
    for (double t : {1.0, 5.0, 10.0}) {
      CAPTURE(name(s));
      CAPTURE(t);
      const WaveField psi = evolve_direct(s, make_eigenstate(3, kDefaults), t, suggest_grid(s, 3, t, kDefaults), kDefaults);
      CHECK(norm(psi) >= 0.999);
      CHECK(norm(psi) <= 1.001);
    }
  }
}

TEST_CASE("the wall pins a node at the origin") {
  const Eigenstate e6 = make_eigenstate(6, kDefaults);
  CHECK(std::abs(evolve_direct_at(Scenario::C, e6, 10.0, {0.0}, kDefaults)[0]) < 1e-8);
  for (int n : {1, 4, 6}) {
    for (double t : {0.5, 10.0, 100.0}) {
      CHECK(std::abs(evolve_erfc_at(Scenario::C, n, t, {0.0}, kDefaults)[0]) < 1e-8);
    }
  }
}

TEST_CASE("density at the origin, direct against erfc") {
  const Eigenstate e1 = make_eigenstate(1, kDefaults);
  const double direct = std::norm(evolve_direct_at(Scenario::B, e1, 5.0, {0.0}, kDefaults)[0]);
  const double closed = std::norm(evolve_erfc_at(Scenario::B, 1, 5.0, {0.0}, kDefaults)[0]);
  CHECK(direct > 0.0);
  CHECK(std::fabs(direct - closed) / closed < 1e-4);
}

TEST_CASE("both routes match adaptive quadrature of the literal kernel") {
  struct Case {
    Scenario s;
    int n;
    double t;
    std::vector<double> xs;
  };
  const std::vector<Case> cases = {
      {Scenario::A, 1, 1.0, {-4.0, -1.0, 0.5, 3.0}},
      {Scenario::B, 2, 1.0, {-3.0, 0.0, 2.0, 6.0}},
      {Scenario::B, 6, 2.0, {-8.0, 1.0, 9.0}},
      {Scenario::C, 3, 1.5, {0.25, 2.0, 5.0, 11.0}},
  };
  for (const Case& c : cases) {
    CAPTURE(name(c.s));
    CAPTURE(c.n);
    const Eigenstate e = make_eigenstate(c.n, kDefaults);
    const double cut = eigenstate_support_end(e, kDefaults);
    const auto direct = evolve_direct_at(c.s, e, c.t, c.xs, kDefaults);
    const auto closed = evolve_erfc_at(c.s, c.n, c.t, c.xs, kDefaults);
    const double k = c.s == Scenario::A ? 1.0 : 0.0;
    const double zero = oracle::boost_airy_zero(c.n);
    const double scale = 1.0 / oracle::boost_airy_prime(zero);
    auto phi = [&](double x) { return scale * oracle::boost_airy(x + zero); };
    for (std::size_t i = 0; i < c.xs.size(); ++i) {
      const cplx ref = oracle::propagate_quadrature(phi, c.xs[i], c.t, cut, 1.0, 0.5, k, c.s == Scenario::C);
      CHECK(std::abs(direct[i] - ref) < 1e-7);
      CHECK(std::abs(closed[i] - ref) < 1e-7);
    }
  }
}

TEST_CASE("shift identity between the ramp and free evolution") {
  for (int n : {1, 6}) {
    for (double t : {1.0, 5.0}) {
      const double shift = t * t;  // K t^2 / 2m
      const SpaceGrid grid = thinned(suggest_grid(Scenario::A, n, t, kDefaults), 8);
      std::vector<double> xs = grid.points(), shifted = xs;
      for (double& x : shifted) x += shift;
      DirectSettings literal;
      literal.backend = Backend::serial;
      const auto a = evolve_direct_at(Scenario::A, make_eigenstate(n, kDefaults), t, xs, kDefaults, literal);
      const auto b = evolve_erfc_at(Scenario::B, n, t, shifted, kDefaults);
      CHECK(max_density_gap(a, b) < 1e-6 * peak_density(b));
    }
  }
}

TEST_CASE("direct and erfc densities agree") {
  for (Scenario s : {Scenario::A, Scenario::B, Scenario::C}) {
    for (int n : {2, 5}) {
      for (double t : {0.5, 7.0}) {
        CAPTURE(name(s));
        CAPTURE(n);
        CAPTURE(t);
        const SpaceGrid grid = thinned(suggest_grid(s, n, t, kDefaults), 10);
        const WaveField d = evolve_direct(s, make_eigenstate(n, kDefaults), t, grid, kDefaults);
        const WaveField e = evolve_erfc(s, n, t, grid, kDefaults);
        CHECK(max_density_gap(d.values, e.values) < 1e-4 * peak_density(d.values));
      }
    }
  }
}

TEST_CASE("direct evolution of a sampled field matches the analytic source") {
  const Eigenstate e = make_eigenstate(3, kDefaults);
  const WaveField sampled =
      cutoff_state(e, kDefaults, SpaceGrid::from_range(0.0, eigenstate_support_end(e, kDefaults), 1e-3));
  const SpaceGrid grid = thinned(suggest_grid(Scenario::B, 3, 2.0, kDefaults), 5);
  const WaveField from_field = evolve_direct(Scenario::B, sampled, 2.0, grid, kDefaults);
  const WaveField from_state = evolve_direct(Scenario::B, e, 2.0, grid, kDefaults);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i) worst = std::max(worst, std::abs(from_field.values[i] - from_state.values[i]));
  CHECK(worst < 1e-5);
  WaveField leaking = sampled;
  leaking.grid.x_min = -1.0;
  CHECK(kind_of([&] { evolve_direct(Scenario::B, leaking, 1.0, grid, kDefaults); }) == ErrorKind::domain);
}

TEST_CASE("superposition") {
  const SpaceGrid grid = thinned(suggest_grid(Scenario::B, 3, 4.0, kDefaults), 4);
  SpectralCoefficients only3;
  only3.values = {0.0, 0.0, 1.0};
  const WaveField sum = evolve_superposition(only3, Scenario::B, 4.0, grid, kDefaults);
  const WaveField single = evolve_direct(Scenario::B, make_eigenstate(3, kDefaults), 4.0, grid, kDefaults);
  CHECK(sum.values == single.values);

  const SpaceGrid source = SpaceGrid::from_range(0.0, 30.0, 1e-3);
  WaveField pair = cutoff_state(make_eigenstate(1, kDefaults), kDefaults, source);
  const WaveField phi2 = cutoff_state(make_eigenstate(2, kDefaults), kDefaults, source);
  for (std::size_t i = 0; i < source.count; ++i) pair.values[i] = (pair.values[i] + phi2.values[i]) / std::sqrt(2.0);
  const SpectralCoefficients c = expand_packet(pair, 10, kDefaults);
  const WaveField rebuilt = evolve_superposition(c, Scenario::B, 0.0, source, kDefaults);
  std::vector<double> d(source.count);
  for (std::size_t i = 0; i < source.count; ++i) d[i] = std::norm(rebuilt.values[i] - pair.values[i]);
  CHECK(std::sqrt(trapezoid(d, source.dx)) < 1e-3);

  const WaveField later = evolve_superposition(c, Scenario::B, 10.0, suggest_grid(Scenario::B, 10, 10.0, kDefaults), kDefaults);
  CHECK(std::fabs(norm(later) - c.weight()) < 1e-3);

  SuperpositionSettings closed;
  closed.method = EvolutionMethod::erfc;
  const WaveField later_erfc = evolve_superposition(c, Scenario::B, 10.0, thinned(later.grid, 10), kDefaults, closed);
  const WaveField later_direct = evolve_superposition(c, Scenario::B, 10.0, thinned(later.grid, 10), kDefaults);
  CHECK(max_density_gap(later_erfc.values, later_direct.values) < 1e-4 * peak_density(later_direct.values));
}

TEST_CASE("numerical validity errors") {
  const Eigenstate e = make_eigenstate(6, kDefaults);
  const SpaceGrid grid = SpaceGrid::from_range(-20.0, 40.0, 0.1);
  DirectSettings coarse;
  coarse.source_dx = 1.0;
  try {
    evolve_direct(Scenario::B, e, 1.0, grid, kDefaults, coarse);
    FAIL("no resolution error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::resolution);
    CHECK(err.numerical_validity());
    CHECK(std::string(err.what()).find("source dx") != std::string::npos);
  }
  ErfcSettings short_cut;
  short_cut.kappa_cut = 1.0;
  try {
    evolve_erfc(Scenario::B, 6, 1.0, grid, kDefaults, short_cut);
    FAIL("no truncation error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::truncation);
    CHECK(err.numerical_validity());
    CHECK(std::string(err.what()).find("need k_cut") != std::string::npos);
  }
  const kernels::KPlan plan = plan_erfc(e, Scenario::B, 1.0, 40.0, kDefaults);
  CHECK(plan.tail_bound <= 1e-8);
  CHECK(plan.eta > 0.0);
}

TEST_CASE("input checks") {
  const Eigenstate e = make_eigenstate(2, kDefaults);
  const SpaceGrid negative = SpaceGrid::from_range(-1.0, 10.0, 0.1);
  CHECK(kind_of([&] { evolve_direct(Scenario::C, e, 1.0, negative, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([&] { evolve_erfc(Scenario::C, 2, 1.0, negative, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([&] { evolve_direct(Scenario::B, e, -1.0, negative, kDefaults); }) == ErrorKind::domain);
  CHECK(kind_of([&] { evolve_erfc(Scenario::B, 51, 1.0, negative, kDefaults); }) == ErrorKind::range);
  SpaceGrid broken = negative;
  broken.dx = 0.0;
  CHECK(kind_of([&] { evolve_direct(Scenario::B, e, 1.0, broken, kDefaults); }) == ErrorKind::shape);
}

TEST_CASE("suggested grids keep the origin") {
  for (Scenario s : {Scenario::A, Scenario::B, Scenario::C}) {
    for (double t : {0.0, 1.0, 37.0, 200.0}) {
      const SpaceGrid g = suggest_grid(s, 6, t, kDefaults);
      const double index = -g.x_min / g.dx;
      CHECK(std::fabs(index - std::round(index)) < 1e-9);
      if (s == Scenario::C) CHECK(g.x_min == 0.0);
      CHECK(g.dx >= 0.01);
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  const Eigenstate e = make_eigenstate(4, kDefaults);
  const std::vector<double> xs = {-6.0, -0.5, 0.0, 1.25, 4.0, 9.0};
  const std::vector<double> half = {0.0, 0.3, 2.0, 7.0};
  for (Scenario s : {Scenario::A, Scenario::B, Scenario::C}) {
    CAPTURE(name(s));
    const auto& points = s == Scenario::C ? half : xs;
    for (DirectRule rule : {DirectRule::trapezoid, DirectRule::filon}) {
      DirectSettings serial, parallel;
      serial.rule = parallel.rule = rule;
      serial.backend = Backend::serial;
      const auto a = evolve_direct_at(s, e, 3.0, points, kDefaults, serial);
      const auto b = evolve_direct_at(s, e, 3.0, points, kDefaults, parallel);
      for (std::size_t i = 0; i < points.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-11);
    }
    ErfcSettings serial;
    serial.backend = Backend::serial;
    const auto a = evolve_erfc_at(s, 4, 3.0, points, kDefaults, serial);
    const auto b = evolve_erfc_at(s, 4, 3.0, points, kDefaults);
    for (std::size_t i = 0; i < points.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-11);
  }
}
