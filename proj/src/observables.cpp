#include "quench/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

namespace {

using cplx = std::complex<double>;

void require_same_grid(const SpaceGrid& a, const SpaceGrid& b, const char* where) {
  if (!same_grid(a, b)) {
    throw Error(ErrorKind::shape, std::string(where) + ": fields live on different grids");
  }
}

// Linear interpolation of real samples; zero outside the grid.
double sample_linear(const RealField& f, double x) {
  const double s = (x - f.grid.x_min) / f.grid.dx;
  const double last = static_cast<double>(f.grid.count - 1);
  if (s < -1e-9 || s > last + 1e-9) return 0.0;
  const double clamped = std::clamp(s, 0.0, last);
  const std::size_t i = std::min(static_cast<std::size_t>(clamped), f.grid.count - 2);
  const double u = clamped - static_cast<double>(i);
  return (1.0 - u) * f.values[i] + u * f.values[i + 1];
}

cplx sample_linear(const WaveField& f, double x) {
  const double s = (x - f.grid.x_min) / f.grid.dx;
  const double last = static_cast<double>(f.grid.count - 1);
  if (s < 0.0 || s > last) return 0.0;
  const std::size_t i = std::min(static_cast<std::size_t>(s), f.grid.count - 2);
  const double u = s - static_cast<double>(i);
  return (1.0 - u) * f.values[i] + u * f.values[i + 1];
}

// Vertex offset of the parabola through three equally spaced samples.
double parabola_offset(double left, double mid, double right) {
  const double curvature = left - 2.0 * mid + right;
  if (curvature == 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
}

}  // namespace

RealField density(const WaveField& psi) {
  RealField rho{psi.grid, psi.time, std::vector<double>(psi.values.size())};
  for (std::size_t i = 0; i < rho.values.size(); ++i) rho.values[i] = std::norm(psi.values[i]);
  return rho;
}

RealField current(const WaveField& psi, const PhysicalParams& params) {
  const std::size_t n = psi.values.size();
  if (n < 3 || psi.grid.count != n) {
    std::ostringstream msg;
    msg << "current needs at least 3 grid points (got " << n << ")";
    throw Error(ErrorKind::shape, msg.str());
  }
  const double scale = params.hbar() / params.mass();
  const double h = psi.grid.dx;
  const auto& v = psi.values;
  RealField j{psi.grid, psi.time, std::vector<double>(n)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    j.values[i] = scale * std::imag(std::conj(v[i]) * (v[i + 1] - v[i - 1]) / (2.0 * h));
  }
  j.values[0] = scale * std::imag(std::conj(v[0]) * (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h));
  j.values[n - 1] =
      scale * std::imag(std::conj(v[n - 1]) * (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h));
  return j;
}

double current_from_stencil(const cplx psi[3], bool one_sided, double step,
                            const PhysicalParams& params) {
  const double scale = params.hbar() / params.mass();
  if (one_sided) {
    const cplx slope = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * step);
    return scale * std::imag(std::conj(psi[0]) * slope);
  }
  const cplx slope = (psi[2] - psi[0]) / (2.0 * step);
  return scale * std::imag(std::conj(psi[1]) * slope);
}

ContinuityResidual continuity_residual(const WaveField& psi_t1, const WaveField& psi_t2,
                                       const PhysicalParams& params) {
  require_same_grid(psi_t1.grid, psi_t2.grid, "continuity_residual");
  const RealField j1 = current(psi_t1, params);
  const RealField j2 = current(psi_t2, params);
  const std::size_t n = psi_t1.values.size();
  const double dt = psi_t2.time - psi_t1.time;
  const bool degenerate = dt == 0.0;
  const double h = psi_t1.grid.dx;

  std::vector<double> drho(n, 0.0), djdx(n, 0.0);
  double peak_drho = 0.0, peak_djdx = 0.0, peak_rho = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak_rho = std::max({peak_rho, std::norm(psi_t1.values[i]), std::norm(psi_t2.values[i])});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!degenerate) {
      drho[i] = (std::norm(psi_t2.values[i]) - std::norm(psi_t1.values[i])) / dt;
    }
    djdx[i] = 0.5 * ((j1.values[i + 1] + j2.values[i + 1]) - (j1.values[i - 1] + j2.values[i - 1])) /
              (2.0 * h);
    peak_drho = std::max(peak_drho, std::fabs(drho[i]));
    peak_djdx = std::max(peak_djdx, std::fabs(djdx[i]));
  }
  // rounding floor: 1e-8 of the steepest dj/dx the grid can hold
  const double floor = 1e-8 * params.hbar() / params.mass() * peak_rho / (h * h);
  const double scale = std::max({peak_drho, peak_djdx, floor});
  ContinuityResidual result;
  result.degenerate = degenerate;
  if (scale == 0.0) return result;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) worst = std::max(worst, std::fabs(drho[i] + djdx[i]));
  result.residual = worst / scale;
  return result;
}

double asymmetry(const RealField& rho) {
  const double reach = std::min(-rho.grid.x_min, rho.grid.x_max());
  if (reach <= 0.0) return 0.0;
  const double limit = reach * (1.0 + 1e-12);
  std::vector<double> odd, mass;
  for (std::size_t i = 0; i < rho.grid.count; ++i) {
    const double x = rho.grid.x(i);
    if (std::fabs(x) > limit) continue;
    odd.push_back(std::fabs(rho.values[i] - sample_linear(rho, -x)));
    mass.push_back(rho.values[i]);
  }
  const double total = trapezoid(mass, rho.grid.dx);
  if (total <= 0.0) return 0.0;
  return trapezoid(odd, rho.grid.dx) / total;
}

StructureReport structure_report(const RealField& rho, double node_threshold_fraction) {
  if (!(node_threshold_fraction > 0.0 && node_threshold_fraction < 0.5)) {
    std::ostringstream msg;
    msg << "node threshold fraction " << node_threshold_fraction << " outside (0, 0.5)";
    throw Error(ErrorKind::range, msg.str());
  }
  const auto& v = rho.values;
  const std::size_t n = v.size();
  if (n < 3 || rho.grid.count != n) throw Error(ErrorKind::shape, "structure_report needs >= 3 samples");
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(v[i] >= 0.0)) {
      std::ostringstream msg;
      msg << "structure_report: negative density " << v[i] << " at x = " << rho.grid.x(i);
      throw Error(ErrorKind::domain, msg.str());
    }
    peak = std::max(peak, v[i]);
  }
  StructureReport report;
  report.asymmetry = asymmetry(rho);
  if (peak == 0.0) return report;
  const double level = node_threshold_fraction * peak;
  const double h = rho.grid.dx;

  // strict maxima, flat tops merged
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 < n && v[j + 1] < v[i] && v[i] > level) {
      const std::size_t mid = (i + j) / 2;
      double x = rho.grid.x(mid);
      if (i == j) x += h * parabola_offset(v[i - 1], v[i], v[i + 1]);
      report.maxima_positions.push_back(x);
      report.maxima_heights.push_back(v[i]);
      peaks.push_back(mid);
    }
    i = j;
  }

  // one node per gap between neighbouring maxima, if the gap dips below the level
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
    std::size_t lowest = peaks[k];
    for (std::size_t i = peaks[k]; i <= peaks[k + 1]; ++i) {
      if (v[i] < v[lowest]) lowest = i;
    }
    if (v[lowest] >= level) continue;
    double x = rho.grid.x(lowest);
    if (lowest > 0 && lowest + 1 < n) x += h * parabola_offset(v[lowest - 1], v[lowest], v[lowest + 1]);
    report.node_positions.push_back(x);
  }

  if (kCountOriginNode) {
    const double s = -rho.grid.x_min / h;
    const long i0 = std::lround(s);
    if (std::fabs(s - static_cast<double>(i0)) < 1e-6 && i0 >= 0 && i0 < static_cast<long>(n)) {
      const std::size_t i = static_cast<std::size_t>(i0);
      const bool left_ok = i == 0 || v[i] <= v[i - 1];
      const bool right_ok = i + 1 == n || v[i] <= v[i + 1];
      bool known = false;
      for (double x : report.node_positions) known = known || std::fabs(x) < h;
      if (v[i] < level && left_ok && right_ok && !known) {
        report.node_positions.push_back(0.0);
      }
    }
  }
  std::sort(report.node_positions.begin(), report.node_positions.end());
  return report;
}

SymmetryTerms symmetry_decomposition(const WaveField& initial, double t, double x,
                                     const PhysicalParams& params) {
  if (!(std::isfinite(t) && t > 0.0)) {
    std::ostringstream msg;
    msg << "symmetry_decomposition: t = " << t << " (the decomposition divides by t)";
    throw Error(ErrorKind::domain, msg.str());
  }
  initial.grid.validate();
  const double beta = params.mass() / (2.0 * params.hbar() * t);
  const double q = params.mass() * x / (params.hbar() * t);
  const std::size_t n = initial.values.size();
  cplx c_sum = 0.0, s_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xs = initial.grid.x(j);
    if (xs < 0.0) continue;
    const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    const cplx g = w * cplx(std::cos(beta * xs * xs), std::sin(beta * xs * xs)) * initial.values[j];
    c_sum += g * std::cos(q * xs);
    s_sum += g * std::sin(q * xs);
  }
  c_sum *= initial.grid.dx;
  s_sum *= initial.grid.dx;
  const double pref = params.mass() / (2.0 * std::numbers::pi * params.hbar() * t);
  return {pref * (std::norm(c_sum) + std::norm(s_sum)), pref * 2.0 * std::imag(std::conj(c_sum) * s_sum)};
}

RealField fermion_density(const std::vector<WaveField>& fields) {
  if (fields.empty()) throw Error(ErrorKind::shape, "fermion_density: no orbitals");
  RealField rho = density(fields.front());
  for (std::size_t k = 1; k < fields.size(); ++k) {
    require_same_grid(fields[k].grid, rho.grid, "fermion_density");
    if (std::fabs(fields[k].time - rho.time) > 1e-12 * std::max(1.0, std::fabs(rho.time))) {
      throw Error(ErrorKind::shape, "fermion_density: orbitals at different times");
    }
    for (std::size_t i = 0; i < rho.values.size(); ++i) rho.values[i] += std::norm(fields[k].values[i]);
  }
  return rho;
}

cplx determinant(std::vector<cplx> a, int n) {
  if (n < 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::shape, "determinant: matrix size mismatch");
  }
  cplx det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      det = -det;
    }
    const cplx diag = a[col * n + col];
    det *= diag;
    for (int r = col + 1; r < n; ++r) {
      const cplx f = a[r * n + col] / diag;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

cplx slater_amplitude(const std::vector<WaveField>& fields, const std::vector<double>& positions) {
  const int n = static_cast<int>(fields.size());
  if (n == 0 || positions.size() != fields.size()) {
    throw Error(ErrorKind::shape, "slater_amplitude: need one position per orbital");
  }
  std::vector<cplx> matrix(static_cast<std::size_t>(n) * n);
  double factorial = 1.0;
  for (int i = 0; i < n; ++i) {
    factorial *= i + 1;
    for (int j = 0; j < n; ++j) matrix[i * n + j] = sample_linear(fields[i], positions[j]);
  }
  return determinant(std::move(matrix), n) / std::sqrt(factorial);
}

BoseMapCheck bose_map_check(const std::vector<WaveField>& fields,
                            const std::vector<std::vector<double>>& sample_points) {
  if (fields.empty() || fields.size() > 3) {
    throw Error(ErrorKind::range, "bose_map_check handles 1 to 3 particles");
  }
  BoseMapCheck check;
  for (const auto& tuple : sample_points) {
    const cplx fermi = slater_amplitude(fields, tuple);
    const double bose = std::abs(fermi);
    check.max_density_mismatch = std::max(check.max_density_mismatch, std::fabs(bose * bose - std::norm(fermi)));
    if (tuple.size() >= 2) {
      std::vector<double> same = tuple;
      same[1] = same[0];
      check.max_coincidence_amplitude =
          std::max(check.max_coincidence_amplitude, std::abs(slater_amplitude(fields, same)));
      std::vector<double> swapped = tuple;
      std::swap(swapped[0], swapped[1]);
      check.max_exchange_error =
          std::max(check.max_exchange_error, std::abs(slater_amplitude(fields, swapped) + fermi));
    }
  }
  return check;
}

}  // namespace quench
