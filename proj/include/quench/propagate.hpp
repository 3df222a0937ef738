#pragma once

#include <complex>
#include <string>
#include <vector>

#include "quench/eigen.hpp"
#include "quench/grid.hpp"
#include "quench/kernels.hpp"
#include "quench/params.hpp"
#include "quench/scenario.hpp"

namespace quench {

// G(x,t|x',0) for H = p^2/2m + Kx; the free kernel when K = 0.
std::complex<double> kernel_linear(double x, double t, double x_src, const PhysicalParams& params);
// Free kernel with a Dirichlet wall at the origin, G(x|x') - G(-x|x').
std::complex<double> kernel_halfspace(double x, double t, double x_src, const PhysicalParams& params);

enum class DirectRule { automatic, trapezoid, filon };

struct DirectSettings {
  DirectRule rule = DirectRule::automatic;
  double source_dx = 0.0;  // 0: chosen from the phase rate
  double max_source_dx = 0.02;
  double filon_dx = 0.002;
  long max_trapezoid_points = 100000;
  Backend backend = Backend::parallel;
};

struct ErfcSettings {
  double points_per_cycle = 4.0;
  double tail_tolerance = 1e-8;
  double kappa_cut = 0.0;  // 0: from a 1e-16 tail bound
  Backend backend = Backend::parallel;
};

// What a run actually used, for manifests.
struct QuadratureReport {
  EvolutionMethod method = EvolutionMethod::direct;
  std::string rule;
  double step = 0.0;
  long nodes = 0;
  double cutoff = 0.0;   // x_cut for direct, kappa_cut for erfc
  double contour = 0.0;  // eta for erfc
  std::string describe() const;
};

// Evolution of the cutoff eigenstate phi_n (zero on x < 0). t = 0 returns the
// initial state itself.
WaveField evolve_direct(Scenario s, const Eigenstate& state, double t, const SpaceGrid& out_grid,
                        const PhysicalParams& params, const DirectSettings& settings = {},
                        QuadratureReport* report = nullptr);

// Same for an arbitrary sampled initial field supported on x >= 0.
WaveField evolve_direct(Scenario s, const WaveField& initial, double t, const SpaceGrid& out_grid,
                        const PhysicalParams& params, const DirectSettings& settings = {},
                        QuadratureReport* report = nullptr);

// Pointwise variant for probe points.
std::vector<std::complex<double>> evolve_direct_at(Scenario s, const Eigenstate& state, double t,
                                                   const std::vector<double>& xs,
                                                   const PhysicalParams& params,
                                                   const DirectSettings& settings = {},
                                                   QuadratureReport* report = nullptr);

WaveField evolve_erfc(Scenario s, int n, double t, const SpaceGrid& out_grid,
                      const PhysicalParams& params, const ErfcSettings& settings = {},
                      QuadratureReport* report = nullptr);

std::vector<std::complex<double>> evolve_erfc_at(Scenario s, int n, double t,
                                                 const std::vector<double>& xs,
                                                 const PhysicalParams& params,
                                                 const ErfcSettings& settings = {},
                                                 QuadratureReport* report = nullptr);

kernels::KPlan plan_erfc(const Eigenstate& state, Scenario s, double t, double max_abs_x,
                         const PhysicalParams& params, const ErfcSettings& settings = {});

struct SuperpositionSettings {
  EvolutionMethod method = EvolutionMethod::direct;
  DirectSettings direct;
  ErfcSettings erfc;
};

WaveField evolve_superposition(const SpectralCoefficients& coeffs, Scenario s, double t,
                               const SpaceGrid& out_grid, const PhysicalParams& params,
                               const SuperpositionSettings& settings = {});

// A grid that holds the evolved phi_n up to a norm leak below ~3e-4.
SpaceGrid suggest_grid(Scenario s, int n, double t, const PhysicalParams& params);

}  // namespace quench
