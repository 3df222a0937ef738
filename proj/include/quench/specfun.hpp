#pragma once

#include <complex>

namespace quench {

struct AiryValue {
  double ai = 0.0;
  double ai_prime = 0.0;
};

struct AiryZero {
  int index = 0;
  double value = 0.0;  // a_n < 0
};

inline constexpr double kAiryMinArgument = -60.0;
inline constexpr double kAiryMaxArgument = 20.0;
inline constexpr int kMaxAiryZeroIndex = 50;

// Ai(x) and Ai'(x) on [kAiryMinArgument, kAiryMaxArgument], absolute error
// below 1e-10. Throws Error(range) outside that interval.
AiryValue airy_ai(double x);

// The n-th negative zero of Ai, 1 <= n <= 50.
AiryZero airy_zero(int n);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
std::complex<double> faddeeva_w(std::complex<double> z);

// Complementary error function for complex argument, |Re z|, |Im z| <= 1e3.
// Throws Error(range) when the result would overflow.
std::complex<double> erfc_complex(std::complex<double> z);

namespace detail {
// Same as airy_ai without the range check; the asymptotic branches are valid
// for any |x| beyond the series seam.
AiryValue airy_unchecked(double x);
}  // namespace detail

}  // namespace quench
