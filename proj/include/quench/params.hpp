#pragma once

namespace quench {

// hbar, m and the ramp slope K of V = Kx. Defaults are the working units
// hbar = 1, m = 0.5, K = 1 (alpha = 1).
class PhysicalParams {
 public:
  PhysicalParams() : PhysicalParams(1.0, 0.5, 1.0) {}
  PhysicalParams(double hbar, double mass, double k_slope);

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  double k_slope() const noexcept { return k_slope_; }
  // (2 m K / hbar^2)^{1/3}, zero without a ramp
  double alpha() const noexcept { return alpha_; }
  // (hbar^2 K^2 / 2m)^{1/3}, so that E_n = -a_n * energy_scale()
  double energy_scale() const noexcept { return energy_scale_; }

  PhysicalParams without_potential() const { return PhysicalParams(hbar_, mass_, 0.0); }

 private:
  double hbar_;
  double mass_;
  double k_slope_;
  double alpha_;
  double energy_scale_;
};

}  // namespace quench
