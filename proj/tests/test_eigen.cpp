#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quench/eigen.hpp"
#include "quench/errors.hpp"

using namespace quench;
using cplx = std::complex<double>;

namespace {

const PhysicalParams kDefaults;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::usage;
}

WaveField sampled(int n, const SpaceGrid& grid, const PhysicalParams& p = kDefaults) {
  return cutoff_state(make_eigenstate(n, p), p, grid);
}

}  // namespace

TEST_CASE("working units") {
  CHECK(kDefaults.hbar() == 1.0);
  CHECK(kDefaults.mass() == 0.5);
  CHECK(kDefaults.k_slope() == 1.0);
  CHECK(kDefaults.alpha() == doctest::Approx(1.0).epsilon(1e-15));
  const PhysicalParams p(1.3, 0.7, 2.1);
  CHECK(p.alpha() == doctest::Approx(std::cbrt(2.0 * 0.7 * 2.1 / (1.3 * 1.3))).epsilon(1e-15));
  CHECK(kind_of([] { PhysicalParams(0.0, 1.0, 1.0); }) == ErrorKind::configuration);
  CHECK(kind_of([] { PhysicalParams(1.0, -1.0, 1.0); }) == ErrorKind::configuration);
  CHECK(kind_of([] { PhysicalParams(1.0, 1.0, -1.0); }) == ErrorKind::configuration);
  CHECK(PhysicalParams(1.0, 0.5, 0.0).alpha() == 0.0);
}

TEST_CASE("spectrum") {
  const Eigenstate e6 = make_eigenstate(6, kDefaults);
  CHECK(std::round(e6.energy * 1000.0) / 1000.0 == doctest::Approx(9.023).epsilon(1e-12));
  CHECK(make_eigenstate(1, kDefaults).energy == doctest::Approx(2.338107410459767).epsilon(1e-13));
  // (hbar^2 K^2 / 2m)^{1/3} = 2 with hbar = 1, m = 0.5: K = 2^{3/2}
  const PhysicalParams doubled(1.0, 0.5, std::pow(2.0, 1.5));
  CHECK(doubled.energy_scale() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(make_eigenstate(1, doubled).energy == doctest::Approx(2.0 * 2.338107410459767).epsilon(1e-13));
  double previous = 0.0;
  for (int n = 1; n <= 50; ++n) {
    const Eigenstate e = make_eigenstate(n, kDefaults);
    CHECK(e.energy > previous);
    CHECK(e.energy == doctest::Approx(-e.airy_zero * kDefaults.energy_scale()).epsilon(1e-15));
    previous = e.energy;
  }
  CHECK(kind_of([] { make_eigenstate(1, PhysicalParams(1.0, 0.5, 0.0)); }) == ErrorKind::configuration);
  CHECK(kind_of([] { make_eigenstate(0, kDefaults); }) == ErrorKind::range);
}

TEST_CASE("energies scale as K^(2/3)") {
  const PhysicalParams steep(1.0, 0.5, 8.0);
  for (int n = 1; n <= 10; ++n) {
    CHECK(make_eigenstate(n, steep).energy ==
          doctest::Approx(4.0 * make_eigenstate(n, kDefaults).energy).epsilon(1e-13));
  }
}

TEST_CASE("eigenfunction values") {
  for (int n = 1; n <= 10; ++n) {
    const Eigenstate e = make_eigenstate(n, kDefaults);
    CHECK(std::fabs(eigenstate_value(e, kDefaults, 0.0)) < 1e-9);
    for (double x : {0.3, 1.7, 4.0, 9.5}) {
      CHECK(eigenstate_value(e, kDefaults, x) == doctest::Approx(oracle::phi(n, 1.0, x)).epsilon(1e-9));
    }
  }
  const Eigenstate e6 = make_eigenstate(6, kDefaults);
  CHECK(std::fabs(eigenstate_value(e6, kDefaults, 6.684543442881213)) < 1e-10);
  for (int k = 1; k <= 5; ++k) {
    const double node = oracle::boost_airy_zero(k) - oracle::boost_airy_zero(6);
    CHECK(std::fabs(eigenstate_value(e6, kDefaults, node)) < 1e-10);
  }
  CHECK(eigenstate_slope(e6, kDefaults, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kind_of([&] { eigenstate_value(e6, kDefaults, -0.1); }) == ErrorKind::domain);
}

TEST_CASE("phi_n has n - 1 interior sign changes") {
  for (int n = 1; n <= 12; ++n) {
    const Eigenstate e = make_eigenstate(n, kDefaults);
    const double end = eigenstate_support_end(e, kDefaults);
    int changes = 0;
    double previous = eigenstate_value(e, kDefaults, 1e-6);
    for (int i = 1; i <= 20000; ++i) {
      const double v = eigenstate_value(e, kDefaults, end * i / 20000.0);
      if (v * previous < 0.0) ++changes;
      if (v != 0.0) previous = v;
    }
    CHECK(changes == n - 1);
  }
}

TEST_CASE("normalization on the truncated half-line") {
  for (int n = 1; n <= 8; ++n) {
    const Eigenstate e = make_eigenstate(n, kDefaults);
    const SpaceGrid grid = SpaceGrid::from_range(0.0, std::fabs(e.airy_zero) + 15.0, 1e-3);
    CHECK(std::fabs(std::real(inner_product(sampled(n, grid), sampled(n, grid))) - 1.0) < 1e-9);
  }
}

TEST_CASE("orthonormality matrix") {
  const SpaceGrid grid = SpaceGrid::from_range(0.0, 25.0, 1e-3);
  std::vector<WaveField> phis;
  for (int n = 1; n <= 8; ++n) phis.push_back(sampled(n, grid));
  double worst = 0.0;
  for (int n = 0; n < 8; ++n) {
    for (int m = 0; m < 8; ++m) {
      worst = std::max(worst, std::abs(inner_product(phis[n], phis[m]) - (n == m ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-6);
  CHECK(std::abs(inner_product(phis[2], phis[2]) - 1.0) < 1e-6);
  CHECK(std::abs(inner_product(phis[1], phis[4])) < 1e-6);
  const WaveField zero{grid, 0.0, std::vector<cplx>(grid.count, 0.0)};
  CHECK(inner_product(zero, phis[0]) == cplx(0.0, 0.0));
  const WaveField other = sampled(1, SpaceGrid::from_range(0.0, 25.0, 2e-3));
  CHECK(kind_of([&] { inner_product(phis[0], other); }) == ErrorKind::shape);
}

TEST_CASE("cutoff state vanishes on the negative axis") {
  const SpaceGrid grid = SpaceGrid::from_range(-5.0, 20.0, 0.01);
  const WaveField f = sampled(3, grid);
  for (std::size_t i = 0; i < grid.count; ++i) {
    if (grid.x(i) < 0.0) CHECK(f.values[i] == cplx(0.0, 0.0));
  }
}

TEST_CASE("expansion of eigenstates and their sums") {
  const SpaceGrid grid = SpaceGrid::from_range(0.0, 40.0, 1e-3);
  const SpectralCoefficients c3 = expand_packet(sampled(3, grid), 10, kDefaults);
  REQUIRE(c3.values.size() == 10);
  for (int n = 1; n <= 10; ++n) {
    if (n == 3) {
      CHECK(std::abs(c3.values[n - 1] - 1.0) < 1e-6);
    } else {
      CHECK(std::abs(c3.values[n - 1]) < 1e-6);
    }
  }
  WaveField pair = sampled(1, grid);
  const WaveField phi2 = sampled(2, grid);
  for (std::size_t i = 0; i < grid.count; ++i) pair.values[i] = (pair.values[i] + phi2.values[i]) / std::sqrt(2.0);
  const SpectralCoefficients c12 = expand_packet(pair, 10, kDefaults);
  CHECK(std::abs(c12.values[0] - 0.7071) < 1e-4);
  CHECK(std::abs(c12.values[1] - 0.7071) < 1e-4);
  CHECK(c12.reconstruction_residual < 1e-6);
}

TEST_CASE("expansion of a Gaussian") {
  const SpaceGrid grid = SpaceGrid::from_range(0.0, 40.0, 1e-3);
  WaveField g{grid, 0.0, std::vector<cplx>(grid.count)};
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double d = (grid.x(i) - 3.0) / 0.5;
    g.values[i] = std::exp(-0.5 * d * d);
  }
  const double scale = 1.0 / std::sqrt(norm(g));
  for (auto& v : g.values) v *= scale;
  const SpectralCoefficients c = expand_packet(g, 30, kDefaults);
  CHECK(std::fabs(c.weight() - 1.0) < 1e-3);
  CHECK(c.weight() <= 1.0 + 1e-6);
  // the residual matches the missing weight
  CHECK(c.reconstruction_residual * c.reconstruction_residual == doctest::Approx(1.0 - c.weight()).epsilon(1e-3));
  // weight grows with the basis size
  CHECK(expand_packet(g, 10, kDefaults).weight() <= expand_packet(g, 20, kDefaults).weight() + 1e-12);
}

TEST_CASE("expansion input checks") {
  const SpaceGrid short_grid = SpaceGrid::from_range(0.0, 20.0, 1e-2);
  const WaveField f = sampled(2, short_grid);
  CHECK(kind_of([&] { expand_packet(f, 30, kDefaults); }) == ErrorKind::accuracy);
  CHECK(kind_of([&] { expand_packet(f, 0, kDefaults); }) == ErrorKind::range);
  CHECK(kind_of([&] { expand_packet(f, 51, kDefaults); }) == ErrorKind::range);
  const SpaceGrid wide = SpaceGrid::from_range(-2.0, 30.0, 1e-2);
  WaveField leaking{wide, 0.0, std::vector<cplx>(wide.count, 0.1)};
  CHECK(kind_of([&] { expand_packet(leaking, 5, kDefaults); }) == ErrorKind::domain);
}
