#pragma once

#include <complex>
#include <vector>

#include "quench/eigen.hpp"
#include "quench/params.hpp"
#include "quench/scenario.hpp"

// Evaluation loops behind propagate. Every kernel exists twice: serial is the
// plain reference, parallel splits the output points over OpenMP threads and
// uses the cheaper completed-square phase recurrences.
namespace quench::kernels {

using cplx = std::complex<double>;

// Initial state sampled at x' = j h, j = 0..N, with its end slopes.
struct Source {
  double h = 0.0;
  std::vector<cplx> values;
  cplx slope_begin = 0.0;
  cplx slope_end = 0.0;

  double end() const { return h * static_cast<double>(values.size() - 1); }
};

enum class SourceRule { trapezoid, filon };

// One free-evolution term: psi(x) += factor * F(center), where F is the free
// evolution of the source evaluated at center.
struct Term {
  cplx factor;
  double center;
};

// The terms that make up scenario s at output point x.
int scenario_terms(Scenario s, double x, double t, const PhysicalParams& params, Term out[2]);

// Contour-shifted k integral for an eigenstate.
struct KPlan {
  double eta = 0.0;        // Im k of the contour
  double kappa_cut = 0.0;  // Re k in [-kappa_cut, kappa_cut]
  double dk = 0.0;
  int count = 0;           // nodes, endpoints included
  double tail_bound = 0.0; // integrand bound at the cut
};

namespace serial {
void direct(Scenario s, SourceRule rule, const Source& src, double t, const PhysicalParams& params,
            const std::vector<double>& xs, cplx* out);
void k_integral(const KPlan& plan, const Eigenstate& state, Scenario s, double t,
                const PhysicalParams& params, const std::vector<double>& xs, cplx* out);
void sample_eigenstate(const Eigenstate& state, const PhysicalParams& params,
                       const std::vector<double>& xs, cplx* out);
}  // namespace serial

namespace parallel {
void direct(Scenario s, SourceRule rule, const Source& src, double t, const PhysicalParams& params,
            const std::vector<double>& xs, cplx* out);
void k_integral(const KPlan& plan, const Eigenstate& state, Scenario s, double t,
                const PhysicalParams& params, const std::vector<double>& xs, cplx* out);
void sample_eigenstate(const Eigenstate& state, const PhysicalParams& params,
                       const std::vector<double>& xs, cplx* out);
}  // namespace parallel

int max_threads() noexcept;

}  // namespace quench::kernels
