#include "quench/kernels.hpp"

#include <cmath>
#include <numbers>

#include "quench/propagate.hpp"
#include "quench/specfun.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace quench::kernels {

namespace {

constexpr cplx kI(0.0, 1.0);
constexpr int kReseedInterval = 64;

double beta_of(double t, const PhysicalParams& p) { return p.mass() / (2.0 * p.hbar() * t); }

// sqrt(m / 2 pi i hbar t)
cplx free_prefactor(double t, const PhysicalParams& p) {
  const double mod = std::sqrt(p.mass() / (2.0 * std::numbers::pi * p.hbar() * t));
  return mod * cplx(std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0);
}

cplx unimodular(double angle) { return {std::cos(angle), std::sin(angle)}; }

// e^{i theta} - 1 without cancellation
cplx expm1_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, std::sin(theta)};
}

// int_0^u e^{i beta s^2} ds
cplx fresnel_i0(double u, double beta) {
  if (u == 0.0) return 0.0;
  const double r = std::sqrt(beta) * std::fabs(u);
  const cplx rot(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);  // e^{i pi/4}
  const cplx erf_value = 1.0 - unimodular(beta * u * u) * faddeeva_w(rot * r);
  const cplx value = 0.5 * std::sqrt(std::numbers::pi / beta) * rot * erf_value;
  return u > 0.0 ? value : -value;
}

// int_0^u s e^{i beta s^2} ds
cplx fresnel_i1(double u, double beta) { return expm1_i(beta * u * u) / (2.0 * kI * beta); }

cplx filon_q(double u, double beta, cplx* i0_out) {
  const cplx i0 = fresnel_i0(u, beta);
  if (i0_out) *i0_out = i0;
  return u * i0 - fresnel_i1(u, beta);
}

// int e^{i beta (x' - c)^2} psi0(x') dx' with psi0 linear between the nodes
cplx filon_free(const Source& src, double beta, double c) {
  const std::size_t last = src.values.size() - 1;
  const double h = src.h;
  cplx i0_first, i0_last;
  cplx q_prev = filon_q(-c, beta, &i0_first);
  cplx q_cur = filon_q(h - c, beta, nullptr);
  cplx sum = (q_cur - q_prev - h * i0_first) / h * src.values[0];
  for (std::size_t j = 1; j < last; ++j) {
    const cplx q_next = filon_q(static_cast<double>(j + 1) * h - c, beta, nullptr);
    sum += (q_next - 2.0 * q_cur + q_prev) / h * src.values[j];
    q_prev = q_cur;
    q_cur = q_next;
  }
  filon_q(static_cast<double>(last) * h - c, beta, &i0_last);
  sum += (q_prev - q_cur + h * i0_last) / h * src.values[last];
  return sum;
}

// Trapezoid with end corrections, phases by recurrence.
cplx trapezoid_free(const Source& src, double beta, double c) {
  const std::size_t last = src.values.size() - 1;
  const double h = src.h;
  const cplx step_growth = unimodular(2.0 * beta * h * h);
  cplx sum = 0.0;
  cplx phase, ratio;
  for (std::size_t j = 0; j <= last; ++j) {
    if (j % kReseedInterval == 0) {
      const double u = static_cast<double>(j) * h - c;
      phase = unimodular(beta * u * u);
      ratio = unimodular(beta * (2.0 * u * h + h * h));
    }
    const double weight = (j == 0 || j == last) ? 0.5 : 1.0;
    sum += weight * phase * src.values[j];
    phase *= ratio;
    ratio *= step_growth;
  }
  sum *= h;
  const double u0 = -c;
  const double u1 = src.end() - c;
  const cplx d0 = unimodular(beta * u0 * u0) *
                  (src.slope_begin + 2.0 * kI * beta * u0 * src.values.front());
  const cplx d1 = unimodular(beta * u1 * u1) *
                  (src.slope_end + 2.0 * kI * beta * u1 * src.values.back());
  return sum + h * h / 12.0 * (d0 - d1);
}

// Literal kernels for the serial reference: G and dG/dx' at one source point.
struct KernelPair {
  cplx value;
  cplx slope;
};

KernelPair literal_kernel(Scenario s, double x, double t, double xs, const PhysicalParams& p,
                          const PhysicalParams& free_params) {
  const double beta = beta_of(t, p);
  if (s == Scenario::C) {
    const cplx g_plus = kernel_linear(x, t, xs, free_params);
    const cplx g_minus = kernel_linear(-x, t, xs, free_params);
    return {kernel_halfspace(x, t, xs, free_params),
            kI * 2.0 * beta * ((xs - x) * g_plus - (xs + x) * g_minus)};
  }
  const PhysicalParams& q = s == Scenario::A ? p : free_params;
  const double gamma = q.k_slope() * t / (2.0 * q.hbar());
  const cplx g = kernel_linear(x, t, xs, q);
  return {g, kI * (2.0 * beta * (xs - x) - gamma) * g};
}

cplx literal_trapezoid(Scenario s, const Source& src, double t, double x, const PhysicalParams& p,
                       const PhysicalParams& free_params) {
  const std::size_t last = src.values.size() - 1;
  cplx sum = 0.0;
  for (std::size_t j = 0; j <= last; ++j) {
    const double weight = (j == 0 || j == last) ? 0.5 : 1.0;
    sum += weight * literal_kernel(s, x, t, static_cast<double>(j) * src.h, p, free_params).value *
           src.values[j];
  }
  sum *= src.h;
  const KernelPair k0 = literal_kernel(s, x, t, 0.0, p, free_params);
  const KernelPair k1 = literal_kernel(s, x, t, src.end(), p, free_params);
  const cplx d0 = k0.slope * src.values.front() + k0.value * src.slope_begin;
  const cplx d1 = k1.slope * src.values.back() + k1.value * src.slope_end;
  return sum + src.h * src.h / 12.0 * (d0 - d1);
}

cplx point_direct(Scenario s, SourceRule rule, const Source& src, double t, double x,
                  const PhysicalParams& p, bool literal, const PhysicalParams& free_params) {
  if (literal && rule == SourceRule::trapezoid) {
    return literal_trapezoid(s, src, t, x, p, free_params);
  }
  const double beta = beta_of(t, p);
  const cplx pref = free_prefactor(t, p);
  Term terms[2];
  const int count = scenario_terms(s, x, t, p, terms);
  cplx value = 0.0;
  for (int k = 0; k < count; ++k) {
    const cplx f = rule == SourceRule::filon ? filon_free(src, beta, terms[k].center)
                                             : trapezoid_free(src, beta, terms[k].center);
    value += terms[k].factor * f;
  }
  return pref * value;
}

// Free evolution of e^{ikx'} cut to x' > 0, evaluated at x with
// X = x - hbar k t/m; stays bounded for Im k > 0.
cplx half_plane_wave(double x, cplx big_x, double t, const PhysicalParams& p) {
  const double scale = std::sqrt(p.mass() / (p.hbar() * t));
  const cplx w0 = cplx(-0.5, 0.5) * scale * big_x;
  const double quad = p.mass() / (2.0 * p.hbar() * t);
  const cplx base = unimodular(quad * x * x);
  if (w0.real() >= 0.0) return 0.5 * base * faddeeva_w(kI * w0);
  return std::exp(kI * quad * (x * x - big_x * big_x)) - 0.5 * base * faddeeva_w(-kI * w0);
}

struct KNodes {
  std::vector<cplx> k;
  std::vector<cplx> weight;  // trapezoid weight times the Airy factor
};

KNodes k_nodes(const KPlan& plan, const Eigenstate& state, const PhysicalParams& p) {
  KNodes nodes;
  nodes.k.resize(plan.count);
  nodes.weight.resize(plan.count);
  const double alpha = p.alpha();
  const double a3 = alpha * alpha * alpha;
  for (int j = 0; j < plan.count; ++j) {
    const cplx k(-plan.kappa_cut + plan.dk * j, plan.eta);
    const double w = (j == 0 || j == plan.count - 1) ? 0.5 : 1.0;
    nodes.k[j] = k;
    nodes.weight[j] = w * plan.dk * std::exp(kI * (k * k * k / (3.0 * a3) + k * state.airy_zero / alpha));
  }
  return nodes;
}

cplx point_k_integral(const KNodes& nodes, const Eigenstate& state, Scenario s, double t, double x,
                      const PhysicalParams& p) {
  const double velocity_scale = p.hbar() * t / p.mass();
  Term terms[2];
  const int count = scenario_terms(s, x, t, p, terms);
  cplx value = 0.0;
  for (int m = 0; m < count; ++m) {
    const double c = terms[m].center;
    cplx sum = 0.0;
    for (std::size_t j = 0; j < nodes.k.size(); ++j) {
      sum += nodes.weight[j] * half_plane_wave(c, c - velocity_scale * nodes.k[j], t, p);
    }
    value += terms[m].factor * sum;
  }
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(p.alpha()) * state.ai_prime_at_zero);
  return norm * value;
}

cplx point_eigenstate(const Eigenstate& state, const PhysicalParams& p, double x) {
  if (x < 0.0) return 0.0;
  return eigenstate_value(state, p, x);
}

}  // namespace

int scenario_terms(Scenario s, double x, double t, const PhysicalParams& p, Term out[2]) {
  switch (s) {
    case Scenario::A: {
      const double beta = beta_of(t, p);
      const double gamma = p.k_slope() * t / (2.0 * p.hbar());
      const double c = x + p.k_slope() * t * t / (2.0 * p.mass());
      const double cubic = p.k_slope() * p.k_slope() * t * t * t / (24.0 * p.mass() * p.hbar());
      const double theta = beta * (x - c) * (x + c) - gamma * x - cubic;
      out[0] = {unimodular(theta), c};
      return 1;
    }
    case Scenario::B:
      out[0] = {1.0, x};
      return 1;
    case Scenario::C:
      out[0] = {1.0, x};
      out[1] = {-1.0, -x};
      return 2;
  }
  return 0;
}

int max_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void direct(Scenario s, SourceRule rule, const Source& src, double t, const PhysicalParams& params,
            const std::vector<double>& xs, cplx* out) {
  const PhysicalParams free_params = params.without_potential();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = point_direct(s, rule, src, t, xs[i], params, true, free_params);
  }
}

void k_integral(const KPlan& plan, const Eigenstate& state, Scenario s, double t,
                const PhysicalParams& params, const std::vector<double>& xs, cplx* out) {
  const KNodes nodes = k_nodes(plan, state, params);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = point_k_integral(nodes, state, s, t, xs[i], params);
  }
}

void sample_eigenstate(const Eigenstate& state, const PhysicalParams& params,
                       const std::vector<double>& xs, cplx* out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = point_eigenstate(state, params, xs[i]);
}

}  // namespace serial

namespace parallel {

void direct(Scenario s, SourceRule rule, const Source& src, double t, const PhysicalParams& params,
            const std::vector<double>& xs, cplx* out) {
  const PhysicalParams free_params = params.without_potential();
  const long count = static_cast<long>(xs.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (long i = 0; i < count; ++i) {
    out[i] = point_direct(s, rule, src, t, xs[i], params, false, free_params);
  }
}

void k_integral(const KPlan& plan, const Eigenstate& state, Scenario s, double t,
                const PhysicalParams& params, const std::vector<double>& xs, cplx* out) {
  const KNodes nodes = k_nodes(plan, state, params);
  const long count = static_cast<long>(xs.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (long i = 0; i < count; ++i) {
    out[i] = point_k_integral(nodes, state, s, t, xs[i], params);
  }
}

void sample_eigenstate(const Eigenstate& state, const PhysicalParams& params,
                       const std::vector<double>& xs, cplx* out) {
  const long count = static_cast<long>(xs.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < count; ++i) out[i] = point_eigenstate(state, params, xs[i]);
}

}  // namespace parallel

}  // namespace quench::kernels
