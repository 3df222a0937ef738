#pragma once

#include <complex>
#include <vector>

#include "quench/eigen.hpp"
#include "quench/grid.hpp"
#include "quench/params.hpp"

namespace quench {

RealField density(const WaveField& psi);

// j = (hbar/m) Im(psi* dpsi/dx) with three-point stencils, one-sided at the ends.
RealField current(const WaveField& psi, const PhysicalParams& params);

// Current at one point from psi at x, x + step, x + 2 step (one_sided) or at
// x - step, x, x + step.
double current_from_stencil(const std::complex<double> psi[3], bool one_sided, double step,
                            const PhysicalParams& params);

struct ContinuityResidual {
  double residual = 0.0;
  bool degenerate = false;  // both fields at the same time
};

ContinuityResidual continuity_residual(const WaveField& psi_t1, const WaveField& psi_t2,
                                       const PhysicalParams& params);

// The pinned zero at x = 0 counts as a node for half-line densities.
inline constexpr bool kCountOriginNode = true;
inline constexpr double kDefaultNodeThreshold = 0.05;

struct StructureReport {
  std::vector<double> node_positions;
  std::vector<double> maxima_positions;
  std::vector<double> maxima_heights;
  double asymmetry = 0.0;
};

StructureReport structure_report(const RealField& rho,
                                 double node_threshold_fraction = kDefaultNodeThreshold);

// L1 norm of the odd part over the part of the grid mirrored around 0,
// divided by the total mass.
double asymmetry(const RealField& rho);

struct SymmetryTerms {
  double even_terms = 0.0;
  double cross_term = 0.0;
};

// Free evolution density of the sampled initial field split into the parts
// (m/2 pi hbar t)(|C|^2 + |S|^2) and the remainder 2 Im(C* S) (m/2 pi hbar t),
// C, S = int e^{i m x'^2/2 hbar t} psi0(x') {cos, sin}(m x x'/hbar t) dx'.
SymmetryTerms symmetry_decomposition(const WaveField& initial, double t, double x,
                                     const PhysicalParams& params);

RealField fermion_density(const std::vector<WaveField>& fields);

// Determinant of a small dense complex matrix (row-major, n x n).
std::complex<double> determinant(std::vector<std::complex<double>> matrix, int n);

// psi_F(x_1..x_N) = det[psi_i(x_j)] / sqrt(N!), orbitals interpolated linearly
// between grid samples.
std::complex<double> slater_amplitude(const std::vector<WaveField>& fields,
                                      const std::vector<double>& positions);

struct BoseMapCheck {
  double max_density_mismatch = 0.0;    // | |psi_B|^2 - |psi_F|^2 |
  double max_coincidence_amplitude = 0.0;  // |psi_F| with x_1 = x_2
  double max_exchange_error = 0.0;      // |psi_F(..x_i..x_j..) + psi_F(..x_j..x_i..)|
};

BoseMapCheck bose_map_check(const std::vector<WaveField>& fields,
                            const std::vector<std::vector<double>>& sample_points);

}  // namespace quench
