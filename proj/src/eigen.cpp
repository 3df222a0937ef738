#include "quench/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/kernels.hpp"
#include "quench/specfun.hpp"

namespace quench {

namespace {

constexpr double kSupportMargin = 15.0;  // in units of 1/alpha past the turning point

void require_half_line(double x) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << "eigenstates live on x >= 0, got x = " << x;
    throw Error(ErrorKind::domain, msg.str());
  }
}

}  // namespace

Eigenstate make_eigenstate(int n, const PhysicalParams& params) {
  if (params.k_slope() <= 0.0) {
    throw Error(ErrorKind::configuration, "no bound states without the ramp (K = 0)");
  }
  const AiryZero zero = airy_zero(n);
  Eigenstate state;
  state.n = n;
  state.airy_zero = zero.value;
  state.energy = -zero.value * params.energy_scale();
  state.ai_prime_at_zero = detail::airy_unchecked(zero.value).ai_prime;
  return state;
}

double eigenstate_value(const Eigenstate& state, const PhysicalParams& params, double x) {
  require_half_line(x);
  const double alpha = params.alpha();
  return std::sqrt(alpha) * detail::airy_unchecked(alpha * x + state.airy_zero).ai /
         state.ai_prime_at_zero;
}

double eigenstate_slope(const Eigenstate& state, const PhysicalParams& params, double x) {
  require_half_line(x);
  const double alpha = params.alpha();
  return alpha * std::sqrt(alpha) *
         detail::airy_unchecked(alpha * x + state.airy_zero).ai_prime / state.ai_prime_at_zero;
}

double eigenstate_support_end(const Eigenstate& state, const PhysicalParams& params) {
  return (std::fabs(state.airy_zero) + kSupportMargin) / params.alpha();
}

WaveField cutoff_state(const Eigenstate& state, const PhysicalParams& params, const SpaceGrid& grid) {
  grid.validate();
  WaveField field{grid, 0.0, std::vector<std::complex<double>>(grid.count)};
  kernels::parallel::sample_eigenstate(state, params, grid.points(), field.values.data());
  return field;
}

std::complex<double> inner_product(const WaveField& f, const WaveField& g) {
  if (!same_grid(f.grid, g.grid) || f.values.size() != g.values.size()) {
    throw Error(ErrorKind::shape, "inner_product: fields live on different grids");
  }
  const std::size_t count = f.values.size();
  if (count < 2) return 0.0;
  std::complex<double> sum = 0.5 * (std::conj(f.values.front()) * g.values.front() +
                                    std::conj(f.values.back()) * g.values.back());
  for (std::size_t i = 1; i + 1 < count; ++i) sum += std::conj(f.values[i]) * g.values[i];
  return sum * f.grid.dx;
}

double SpectralCoefficients::weight() const {
  double total = 0.0;
  for (const auto& c : values) total += std::norm(c);
  return total;
}

SpectralCoefficients expand_packet(const WaveField& psi0, int n_max, const PhysicalParams& params) {
  if (n_max < 1 || n_max > kMaxAiryZeroIndex) {
    std::ostringstream msg;
    msg << "expand_packet: n_max = " << n_max << " outside [1, " << kMaxAiryZeroIndex << "]";
    throw Error(ErrorKind::range, msg.str());
  }
  psi0.grid.validate();
  if (psi0.values.size() != psi0.grid.count) {
    throw Error(ErrorKind::shape, "expand_packet: sample count does not match the grid");
  }
  double peak = 0.0;
  for (const auto& v : psi0.values) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < psi0.grid.count; ++i) {
    if (psi0.grid.x(i) < 0.0 && std::abs(psi0.values[i]) > 1e-8 * peak) {
      std::ostringstream msg;
      msg << "expand_packet: initial packet has amplitude at x = " << psi0.grid.x(i) << " < 0";
      throw Error(ErrorKind::domain, msg.str());
    }
  }
  const Eigenstate top = make_eigenstate(n_max, params);
  const double turning = std::fabs(top.airy_zero) / params.alpha();
  if (psi0.grid.x_max() < turning) {
    std::ostringstream msg;
    msg << "expand_packet: grid ends at x = " << psi0.grid.x_max()
        << " inside the classically allowed region of phi_" << n_max << " (x < " << turning
        << ")";
    throw Error(ErrorKind::accuracy, msg.str());
  }

  SpectralCoefficients result;
  result.values.reserve(n_max);
  std::vector<std::complex<double>> rebuilt(psi0.grid.count, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const WaveField phi = cutoff_state(make_eigenstate(n, params), params, psi0.grid);
    const std::complex<double> c = inner_product(phi, psi0);
    result.values.push_back(c);
    for (std::size_t i = 0; i < rebuilt.size(); ++i) rebuilt[i] += c * phi.values[i];
  }
  std::vector<double> diff(rebuilt.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::norm(psi0.values[i] - rebuilt[i]);
  result.reconstruction_residual = std::sqrt(trapezoid(diff, psi0.grid.dx));
  return result;
}

}  // namespace quench
