#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace quench {

struct SpaceGrid {
  double x_min = 0.0;
  double dx = 1.0;
  std::size_t count = 2;

  // Uniform grid from x_min to x_max whose spacing is the closest value to
  // dx that lands on x_max exactly.
  static SpaceGrid from_range(double x_min, double x_max, double dx);

  double x(std::size_t i) const noexcept { return x_min + dx * static_cast<double>(i); }
  double x_max() const noexcept { return x(count - 1); }
  std::vector<double> points() const;
  void validate() const;  // throws Error(shape)
};

bool same_grid(const SpaceGrid& a, const SpaceGrid& b) noexcept;

struct WaveField {
  SpaceGrid grid;
  double time = 0.0;
  std::vector<std::complex<double>> values;
};

struct RealField {
  SpaceGrid grid;
  double time = 0.0;
  std::vector<double> values;
};

// Trapezoid rule of samples with spacing dx.
double trapezoid(const std::vector<double>& values, double dx);
double norm(const WaveField& psi);

}  // namespace quench
