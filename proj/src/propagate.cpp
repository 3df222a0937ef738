#include "quench/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

namespace {

using cplx = std::complex<double>;

void require_positive_time(double t, const char* where) {
  if (!(std::isfinite(t) && t > 0.0)) {
    std::ostringstream msg;
    msg << where << ": t = " << t << " (needs t > 0)";
    throw Error(ErrorKind::domain, msg.str());
  }
}

void require_non_negative_time(double t, const char* where) {
  if (!(std::isfinite(t) && t >= 0.0)) {
    std::ostringstream msg;
    msg << where << ": t = " << t << " (needs t >= 0)";
    throw Error(ErrorKind::domain, msg.str());
  }
}

void require_half_line_output(Scenario s, double x_min, const char* where) {
  if (s == Scenario::C && x_min < 0.0) {
    std::ostringstream msg;
    msg << where << ": scenario c lives on x >= 0, output starts at x = " << x_min;
    throw Error(ErrorKind::domain, msg.str());
  }
}

double min_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
}

// Largest |x' - c| over the source and all term centers.
double phase_reach(Scenario s, const std::vector<double>& xs, double t, double support_end,
                   const PhysicalParams& params) {
  double reach = support_end;
  for (double x : xs) {
    kernels::Term terms[2];
    const int count = kernels::scenario_terms(s, x, t, params, terms);
    for (int k = 0; k < count; ++k) {
      const double c = terms[k].center;
      reach = std::max({reach, std::fabs(c), std::fabs(support_end - c)});
    }
  }
  return reach;
}

struct SourcePlan {
  kernels::SourceRule rule;
  double h;
  long intervals;
};

SourcePlan plan_source(Scenario s, const std::vector<double>& xs, double t, double support_end,
                       double profile_wavenumber, const PhysicalParams& params,
                       const DirectSettings& settings) {
  const double beta = params.mass() / (2.0 * params.hbar() * t);
  const double rate = 2.0 * beta * phase_reach(s, xs, t, support_end, params) + profile_wavenumber;
  const double auto_h = std::min(settings.max_source_dx, (std::numbers::pi / 8.0) / rate);
  const double coarsest = (std::numbers::pi / 2.0) / rate;  // four points per phase cycle

  auto intervals_for = [&](double h) {
    return std::max(2L, static_cast<long>(std::ceil(support_end / h - 1e-9)));
  };

  if (settings.source_dx > 0.0 && settings.rule != DirectRule::filon &&
      settings.source_dx > coarsest) {
    std::ostringstream msg;
    msg << "source step " << settings.source_dx << " gives fewer than 4 points per phase cycle at t = "
        << t << "; need source dx <= " << coarsest;
    throw Error(ErrorKind::resolution, msg.str());
  }

  DirectRule rule = settings.rule;
  if (rule == DirectRule::automatic) {
    const double h = settings.source_dx > 0.0 ? settings.source_dx : auto_h;
    rule = support_end / h > static_cast<double>(settings.max_trapezoid_points) ? DirectRule::filon
                                                                               : DirectRule::trapezoid;
  }
  if (rule == DirectRule::filon) {
    const double h = settings.source_dx > 0.0 ? settings.source_dx : settings.filon_dx;
    const long n = intervals_for(h);
    return {kernels::SourceRule::filon, support_end / static_cast<double>(n), n};
  }
  const double h = settings.source_dx > 0.0 ? settings.source_dx : auto_h;
  const long n = intervals_for(h);
  return {kernels::SourceRule::trapezoid, support_end / static_cast<double>(n), n};
}

kernels::Source eigen_source(const Eigenstate& state, const PhysicalParams& params, double h, long intervals) {
  kernels::Source src;
  src.h = h;
  src.values.resize(intervals + 1);
  std::vector<double> nodes(intervals + 1);
  for (long j = 0; j <= intervals; ++j) nodes[j] = h * static_cast<double>(j);
  kernels::parallel::sample_eigenstate(state, params, nodes, src.values.data());
  src.slope_begin = eigenstate_slope(state, params, 0.0);
  src.slope_end = eigenstate_slope(state, params, nodes.back());
  return src;
}

// Catmull-Rom interpolation of samples, with the derivative of the interpolant.
cplx interpolate(const WaveField& f, double x, cplx* slope) {
  const SpaceGrid& g = f.grid;
  const long last = static_cast<long>(g.count) - 1;
  const double s = (x - g.x_min) / g.dx;
  if (s < 0.0 || s > static_cast<double>(last)) {
    if (slope) *slope = 0.0;
    return 0.0;
  }
  long i = std::min(static_cast<long>(std::floor(s)), last - 1);
  const double u = s - static_cast<double>(i);
  auto at = [&](long k) -> cplx {
    if (k < 0) return 2.0 * f.values[0] - f.values[1];
    if (k > last) return 2.0 * f.values[last] - f.values[last - 1];
    return f.values[k];
  };
  const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  const cplx a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  const cplx b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  const cplx c = -0.5 * p0 + 0.5 * p2;
  if (slope) *slope = ((3.0 * a * u + 2.0 * b) * u + c) / g.dx;
  return ((a * u + b) * u + c) * u + p1;
}

void check_initial_support(const WaveField& initial) {
  initial.grid.validate();
  if (initial.values.size() != initial.grid.count) {
    throw Error(ErrorKind::shape, "initial field: sample count does not match the grid");
  }
  double peak = 0.0;
  for (const auto& v : initial.values) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < initial.grid.count; ++i) {
    if (initial.grid.x(i) < 0.0 && std::abs(initial.values[i]) > 1e-8 * peak) {
      std::ostringstream msg;
      msg << "initial field has amplitude at x = " << initial.grid.x(i) << " < 0";
      throw Error(ErrorKind::domain, msg.str());
    }
  }
}

double sampled_support_end(const WaveField& initial) {
  double peak = 0.0;
  for (const auto& v : initial.values) peak = std::max(peak, std::abs(v));
  double end = 0.0;
  for (std::size_t i = 0; i < initial.grid.count; ++i) {
    if (std::abs(initial.values[i]) > 1e-12 * peak) end = initial.grid.x(i);
  }
  return std::min(initial.grid.x_max(), end + 2.0 * initial.grid.dx);
}

void run_direct(Scenario s, kernels::SourceRule rule, const kernels::Source& src, double t,
                const PhysicalParams& params, const std::vector<double>& xs, cplx* out,
                Backend backend) {
  if (backend == Backend::serial) {
    kernels::serial::direct(s, rule, src, t, params, xs, out);
  } else {
    kernels::parallel::direct(s, rule, src, t, params, xs, out);
  }
}

void fill_report(QuadratureReport* report, const SourcePlan& plan, double support_end) {
  if (!report) return;
  report->method = EvolutionMethod::direct;
  report->rule = plan.rule == kernels::SourceRule::filon ? "filon" : "trapezoid";
  report->step = plan.h;
  report->nodes = plan.intervals + 1;
  report->cutoff = support_end;
  report->contour = 0.0;
}

std::vector<cplx> direct_eigen_points(Scenario s, const Eigenstate& state, double t,
                                      const std::vector<double>& xs, const PhysicalParams& params,
                                      const DirectSettings& settings, QuadratureReport* report) {
  const double support_end = eigenstate_support_end(state, params);
  const double profile_k = params.alpha() * std::sqrt(std::fabs(state.airy_zero));
  const SourcePlan plan = plan_source(s, xs, t, support_end, profile_k, params, settings);
  const kernels::Source src = eigen_source(state, params, plan.h, plan.intervals);
  std::vector<cplx> out(xs.size());
  run_direct(s, plan.rule, src, t, params, xs, out.data(), settings.backend);
  fill_report(report, plan, support_end);
  return out;
}

}  // namespace

std::string QuadratureReport::describe() const {
  std::ostringstream out;
  out.precision(10);
  out << "method=" << to_string(method) << " rule=" << rule << " step=" << step << " nodes=" << nodes;
  if (method == EvolutionMethod::direct) {
    out << " x_cut=" << cutoff;
  } else {
    out << " k_cut=" << cutoff << " eta=" << contour;
  }
  return out.str();
}

cplx kernel_linear(double x, double t, double x_src, const PhysicalParams& params) {
  require_positive_time(t, "kernel_linear");
  const double hbar = params.hbar();
  const double m = params.mass();
  const double k = params.k_slope();
  const double d = x - x_src;
  const double phase = m / (2.0 * hbar * t) * d * d - k * t / (2.0 * hbar) * (x + x_src) -
                       k * k * t * t * t / (24.0 * m * hbar);
  const cplx pref = std::sqrt(cplx(0.0, -m / (2.0 * std::numbers::pi * hbar * t)));
  return pref * cplx(std::cos(phase), std::sin(phase));
}

cplx kernel_halfspace(double x, double t, double x_src, const PhysicalParams& params) {
  require_positive_time(t, "kernel_halfspace");
  if (!(x >= 0.0) || !(x_src >= 0.0)) {
    std::ostringstream msg;
    msg << "kernel_halfspace: positions must be >= 0 (x = " << x << ", x' = " << x_src << ")";
    throw Error(ErrorKind::domain, msg.str());
  }
  const PhysicalParams free_params = params.without_potential();
  return kernel_linear(x, t, x_src, free_params) - kernel_linear(-x, t, x_src, free_params);
}

WaveField evolve_direct(Scenario s, const Eigenstate& state, double t, const SpaceGrid& out_grid,
                        const PhysicalParams& params, const DirectSettings& settings,
                        QuadratureReport* report) {
  out_grid.validate();
  require_non_negative_time(t, "evolve_direct");
  require_half_line_output(s, out_grid.x_min, "evolve_direct");
  if (t == 0.0) {
    WaveField field = cutoff_state(state, params, out_grid);
    if (report) *report = QuadratureReport{EvolutionMethod::direct, "initial", 0.0, 0, 0.0, 0.0};
    return field;
  }
  WaveField field{out_grid, t, {}};
  field.values = direct_eigen_points(s, state, t, out_grid.points(), params, settings, report);
  return field;
}

WaveField evolve_direct(Scenario s, const WaveField& initial, double t, const SpaceGrid& out_grid,
                        const PhysicalParams& params, const DirectSettings& settings,
                        QuadratureReport* report) {
  out_grid.validate();
  require_non_negative_time(t, "evolve_direct");
  require_half_line_output(s, out_grid.x_min, "evolve_direct");
  check_initial_support(initial);
  WaveField field{out_grid, t, std::vector<cplx>(out_grid.count)};
  if (t == 0.0) {
    for (std::size_t i = 0; i < out_grid.count; ++i) {
      const double x = out_grid.x(i);
      field.values[i] = x < 0.0 ? cplx(0.0) : interpolate(initial, x, nullptr);
    }
    if (report) *report = QuadratureReport{EvolutionMethod::direct, "initial", 0.0, 0, 0.0, 0.0};
    return field;
  }
  const double support_end = sampled_support_end(initial);
  const double profile_k = std::numbers::pi / (4.0 * initial.grid.dx);
  const std::vector<double> xs = out_grid.points();
  const SourcePlan plan = plan_source(s, xs, t, support_end, profile_k, params, settings);
  kernels::Source src;
  src.h = plan.h;
  src.values.resize(plan.intervals + 1);
  for (long j = 0; j <= plan.intervals; ++j) {
    src.values[j] = interpolate(initial, plan.h * static_cast<double>(j), nullptr);
  }
  interpolate(initial, 0.0, &src.slope_begin);
  interpolate(initial, src.end(), &src.slope_end);
  run_direct(s, plan.rule, src, t, params, xs, field.values.data(), settings.backend);
  fill_report(report, plan, support_end);
  return field;
}

std::vector<cplx> evolve_direct_at(Scenario s, const Eigenstate& state, double t,
                                   const std::vector<double>& xs, const PhysicalParams& params,
                                   const DirectSettings& settings, QuadratureReport* report) {
  require_non_negative_time(t, "evolve_direct_at");
  require_half_line_output(s, min_of(xs), "evolve_direct_at");
  if (t == 0.0) {
    std::vector<cplx> out(xs.size());
    kernels::parallel::sample_eigenstate(state, params, xs, out.data());
    return out;
  }
  return direct_eigen_points(s, state, t, xs, params, settings, report);
}

kernels::KPlan plan_erfc(const Eigenstate& state, Scenario s, double t, double max_abs_x,
                         const PhysicalParams& params, const ErfcSettings& settings) {
  require_positive_time(t, "plan_erfc");
  const double alpha = params.alpha();
  const double a3 = alpha * alpha * alpha;
  const double zero = std::fabs(state.airy_zero);
  kernels::KPlan plan;
  plan.eta = alpha * std::min(1.0, 3.0 / zero);
  const double log_range = 36.0 + plan.eta * zero / alpha;
  plan.kappa_cut = settings.kappa_cut > 0.0 ? settings.kappa_cut
                                            : alpha * std::sqrt(alpha) * std::sqrt(log_range / plan.eta);
  double reach = max_abs_x;
  if (s == Scenario::A) reach += params.k_slope() * t * t / (2.0 * params.mass());
  const double kc = plan.kappa_cut;
  const double rate = kc * kc / a3 + zero / alpha + reach + params.hbar() * kc * t / params.mass() +
                      std::sqrt(120.0 * plan.eta / a3);
  const double dk = 2.0 * std::numbers::pi / (rate * settings.points_per_cycle);
  const long intervals = std::max(2L, static_cast<long>(std::ceil(2.0 * kc / dk)));
  plan.count = static_cast<int>(intervals + 1);
  plan.dk = 2.0 * kc / static_cast<double>(intervals);
  // |exp(i k^3/3a^3 + i k a_n/a)| at k = kappa_cut + i eta; the plane-wave factor is bounded by 1
  const double exponent = -(3.0 * kc * kc * plan.eta - plan.eta * plan.eta * plan.eta) / (3.0 * a3) +
                          plan.eta * zero / alpha;
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(alpha) * std::fabs(state.ai_prime_at_zero));
  plan.tail_bound = 2.0 * norm * std::exp(exponent);
  if (plan.tail_bound > settings.tail_tolerance) {
    const double needed = alpha * std::sqrt(alpha) *
                          std::sqrt((plan.eta * zero / alpha + plan.eta * plan.eta * plan.eta / (3.0 * a3) +
                                     std::log(2.0 * norm / settings.tail_tolerance)) /
                                    plan.eta);
    std::ostringstream msg;
    msg << "k integral tail " << plan.tail_bound << " at k_cut = " << kc << " exceeds "
        << settings.tail_tolerance << "; need k_cut >= " << needed;
    throw Error(ErrorKind::truncation, msg.str());
  }
  return plan;
}

std::vector<cplx> evolve_erfc_at(Scenario s, int n, double t, const std::vector<double>& xs,
                                 const PhysicalParams& params, const ErfcSettings& settings,
                                 QuadratureReport* report) {
  require_non_negative_time(t, "evolve_erfc");
  require_half_line_output(s, min_of(xs), "evolve_erfc");
  const Eigenstate state = make_eigenstate(n, params);
  std::vector<cplx> out(xs.size());
  if (t == 0.0) {
    kernels::parallel::sample_eigenstate(state, params, xs, out.data());
    if (report) *report = QuadratureReport{EvolutionMethod::erfc, "initial", 0.0, 0, 0.0, 0.0};
    return out;
  }
  double reach = 0.0;
  for (double x : xs) reach = std::max(reach, std::fabs(x));
  const kernels::KPlan plan = plan_erfc(state, s, t, reach, params, settings);
  if (settings.backend == Backend::serial) {
    kernels::serial::k_integral(plan, state, s, t, params, xs, out.data());
  } else {
    kernels::parallel::k_integral(plan, state, s, t, params, xs, out.data());
  }
  if (report) {
    *report = QuadratureReport{EvolutionMethod::erfc, "trapezoid", plan.dk, plan.count,
                               plan.kappa_cut, plan.eta};
  }
  return out;
}

WaveField evolve_erfc(Scenario s, int n, double t, const SpaceGrid& out_grid,
                      const PhysicalParams& params, const ErfcSettings& settings,
                      QuadratureReport* report) {
  out_grid.validate();
  require_half_line_output(s, out_grid.x_min, "evolve_erfc");
  WaveField field{out_grid, t, {}};
  field.values = evolve_erfc_at(s, n, t, out_grid.points(), params, settings, report);
  return field;
}

WaveField evolve_superposition(const SpectralCoefficients& coeffs, Scenario s, double t,
                               const SpaceGrid& out_grid, const PhysicalParams& params,
                               const SuperpositionSettings& settings) {
  out_grid.validate();
  require_non_negative_time(t, "evolve_superposition");
  require_half_line_output(s, out_grid.x_min, "evolve_superposition");
  WaveField total{out_grid, t, std::vector<cplx>(out_grid.count, 0.0)};
  for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
    const cplx c = coeffs.values[k];
    if (c == 0.0) continue;
    const int n = static_cast<int>(k) + 1;
    const WaveField mode =
        settings.method == EvolutionMethod::erfc
            ? evolve_erfc(s, n, t, out_grid, params, settings.erfc)
            : evolve_direct(s, make_eigenstate(n, params), t, out_grid, params, settings.direct);
    for (std::size_t i = 0; i < out_grid.count; ++i) total.values[i] += c * mode.values[i];
  }
  return total;
}

SpaceGrid suggest_grid(Scenario s, int n, double t, const PhysicalParams& params) {
  require_non_negative_time(t, "suggest_grid");
  const Eigenstate state = make_eigenstate(n, params);
  const double alpha = params.alpha();
  const double x_cut = eigenstate_support_end(state, params);
  const double speed =
      params.hbar() / params.mass() * std::max(8.0 * alpha, 2.0 * alpha * std::sqrt(std::fabs(state.airy_zero)));
  double left = -(10.0 / alpha + speed * t);
  double right = x_cut + speed * t;
  if (s == Scenario::A) {
    const double shift = params.k_slope() * t * t / (2.0 * params.mass());
    left -= shift;
    right -= shift;
  }
  if (s == Scenario::C) left = 0.0;
  const double dx = std::max(0.01, params.hbar() * t / (params.mass() * x_cut * 20.0));
  // the origin stays a grid point
  SpaceGrid grid;
  const double first = std::floor(left / dx + 1e-9);
  grid.x_min = first * dx;
  grid.dx = dx;
  grid.count = static_cast<std::size_t>(std::ceil(right / dx - 1e-9) - first) + 1;
  return grid;
}

}  // namespace quench
