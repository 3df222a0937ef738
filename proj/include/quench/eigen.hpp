#pragma once

#include <complex>
#include <vector>

#include "quench/grid.hpp"
#include "quench/params.hpp"

namespace quench {

struct Eigenstate {
  int n = 1;
  double airy_zero = 0.0;
  double energy = 0.0;
  double ai_prime_at_zero = 0.0;  // Ai'(a_n), fixes the normalization
};

Eigenstate make_eigenstate(int n, const PhysicalParams& params);

// phi_n(x) = sqrt(alpha) Ai(alpha x + a_n) / Ai'(a_n) for x >= 0
double eigenstate_value(const Eigenstate& state, const PhysicalParams& params, double x);
double eigenstate_slope(const Eigenstate& state, const PhysicalParams& params, double x);

// Upper end of the numerical support, |a_n|/alpha + 15/alpha.
double eigenstate_support_end(const Eigenstate& state, const PhysicalParams& params);

// The cutoff initial state: phi_n on x >= 0 and zero elsewhere.
WaveField cutoff_state(const Eigenstate& state, const PhysicalParams& params, const SpaceGrid& grid);

std::complex<double> inner_product(const WaveField& f, const WaveField& g);

struct SpectralCoefficients {
  std::vector<std::complex<double>> values;  // values[k] is c_{k+1}
  double reconstruction_residual = 0.0;      // || psi0 - sum c_n phi_n ||_2

  double weight() const;  // sum |c_n|^2
};

SpectralCoefficients expand_packet(const WaveField& psi0, int n_max, const PhysicalParams& params);

}  // namespace quench
