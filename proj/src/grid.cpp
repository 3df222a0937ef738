#include "quench/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/params.hpp"
#include "quench/scenario.hpp"

namespace quench {

PhysicalParams::PhysicalParams(double hbar, double mass, double k_slope)
    : hbar_(hbar), mass_(mass), k_slope_(k_slope) {
  if (!(std::isfinite(hbar) && hbar > 0.0)) {
    throw Error(ErrorKind::configuration, "hbar must be positive and finite");
  }
  if (!(std::isfinite(mass) && mass > 0.0)) {
    throw Error(ErrorKind::configuration, "mass must be positive and finite");
  }
  if (!(std::isfinite(k_slope) && k_slope >= 0.0)) {
    throw Error(ErrorKind::configuration, "K must be non-negative and finite");
  }
  alpha_ = std::cbrt(2.0 * mass * k_slope / (hbar * hbar));
  energy_scale_ = std::cbrt(hbar * hbar * k_slope * k_slope / (2.0 * mass));
}

SpaceGrid SpaceGrid::from_range(double x_min, double x_max, double dx) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(dx) || dx <= 0.0 ||
      x_max <= x_min) {
    std::ostringstream msg;
    msg << "invalid grid range [" << x_min << ", " << x_max << "] with dx = " << dx;
    throw Error(ErrorKind::shape, msg.str());
  }
  const double intervals = std::max(1.0, std::round((x_max - x_min) / dx));
  SpaceGrid grid;
  grid.x_min = x_min;
  grid.count = static_cast<std::size_t>(intervals) + 1;
  grid.dx = (x_max - x_min) / intervals;
  return grid;
}

std::vector<double> SpaceGrid::points() const {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = x(i);
  return xs;
}

void SpaceGrid::validate() const {
  if (count < 2 || !(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min)) {
    std::ostringstream msg;
    msg << "grid needs count >= 2 and dx > 0 (count = " << count << ", dx = " << dx << ")";
    throw Error(ErrorKind::shape, msg.str());
  }
}

bool same_grid(const SpaceGrid& a, const SpaceGrid& b) noexcept {
  if (a.count != b.count) return false;
  const double scale = std::max(std::fabs(a.dx), 1e-300);
  return std::fabs(a.dx - b.dx) <= 1e-12 * scale &&
         std::fabs(a.x_min - b.x_min) <= 1e-9 * scale;
}

double trapezoid(const std::vector<double>& values, double dx) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * dx;
}

double norm(const WaveField& psi) {
  std::vector<double> rho(psi.values.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.values[i]);
  return trapezoid(rho, psi.grid.dx);
}

const char* to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::A: return "a";
    case Scenario::B: return "b";
    case Scenario::C: return "c";
  }
  return "?";
}

const char* to_string(EvolutionMethod m) noexcept {
  return m == EvolutionMethod::direct ? "direct" : "erfc";
}

Scenario parse_scenario(const std::string& text) {
  if (text == "a" || text == "A") return Scenario::A;
  if (text == "b" || text == "B") return Scenario::B;
  if (text == "c" || text == "C") return Scenario::C;
  throw Error(ErrorKind::usage, "unknown scenario '" + text + "' (expected a, b or c)");
}

EvolutionMethod parse_method(const std::string& text) {
  if (text == "direct") return EvolutionMethod::direct;
  if (text == "erfc") return EvolutionMethod::erfc;
  throw Error(ErrorKind::usage, "unknown method '" + text + "' (expected direct or erfc)");
}

}  // namespace quench
