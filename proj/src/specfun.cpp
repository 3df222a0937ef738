#include "quench/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::range: return "range error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::shape: return "shape error";
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::accuracy: return "accuracy error";
    case ErrorKind::resolution: return "resolution error";
    case ErrorKind::truncation: return "truncation error";
    case ErrorKind::usage: return "usage error";
    case ErrorKind::conflict: return "conflict error";
  }
  return "error";
}

namespace {

constexpr long double kAiAtZero = 0.355028053887817239260063186004183176L;
constexpr long double kAiPrimeAtZero = -0.258819403792806798405183560189203963L;

// Series/asymptotic seams. On the oscillatory side the asymptotic series only
// reaches ~1e-13 relative once zeta = (2/3)|x|^{3/2} exceeds 15, hence -8.
constexpr double kSeriesLower = -8.0;
constexpr double kSeriesUpper = 6.0;

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

// Maclaurin series Ai = Ai(0) f + Ai'(0) g in extended precision.
AiryValue airy_series(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  long double tf = 1.0L, f = 1.0L;            // f terms, k = 0
  long double tg = x, g = x;                  // g terms, k = 0
  long double tgp = 1.0L, gp = 1.0L;          // g' terms, k = 0
  long double tfp = x * x / 2.0L, fp = tfp;   // f' terms start at k = 1
  for (int k = 0; k < 400; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / ((k3 + 2.0L) * (k3 + 3.0L));
    tg *= x3 / ((k3 + 3.0L) * (k3 + 4.0L));
    tgp *= x3 / ((k3 + 1.0L) * (k3 + 3.0L));
    tfp *= x3 / ((k3 + 3.0L) * (k3 + 5.0L));
    f += tf;
    g += tg;
    gp += tgp;
    fp += tfp;
    const long double tail = std::fabs(tf) + std::fabs(tg) + std::fabs(tgp) + std::fabs(tfp);
    const long double scale = std::fabs(f) + std::fabs(g) + std::fabs(gp) + std::fabs(fp);
    if (tail <= 1e-21L * scale) break;
  }
  return {static_cast<double>(kAiAtZero * f + kAiPrimeAtZero * g),
          static_cast<double>(kAiAtZero * fp + kAiPrimeAtZero * gp)};
}

// Coefficient u_k of the Airy asymptotic expansions; v_k = -(6k+1)/(6k-1) u_k.
struct AsymptoticTerm {
  double u;
  double v;
};

AiryValue airy_asymptotic_positive(double x) {
  const double root = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * root;
  const double quarter = std::sqrt(root);
  double u = 1.0;
  double sum_u = 1.0;
  double sum_v = 1.0;
  double power = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    power *= -1.0 / zeta;
    const double term = u * power;
    if (std::fabs(term) > last) break;  // past optimal truncation
    sum_u += term;
    sum_v += v * power;
    last = std::fabs(term);
    if (last < 1e-17) break;
  }
  const double decay = std::exp(-zeta);
  return {0.5 * kInvSqrtPi * decay / quarter * sum_u,
          -0.5 * kInvSqrtPi * quarter * decay * sum_v};
}

AiryValue airy_asymptotic_negative(double x) {
  const double y = -x;
  const double root = std::sqrt(y);
  const double zeta = 2.0 / 3.0 * y * root;
  const double quarter = std::sqrt(root);
  // Even-index coefficients go to the cosine-type sums, odd ones to the sine-type.
  double p = 1.0, q = 0.0, r = 1.0, s = 0.0;
  double u = 1.0;
  double power = 1.0;
  double last = 1.0;
  for (int k = 1; k < 80; ++k) {
    u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    power /= zeta;
    const double term = u * power;
    if (std::fabs(term) > last) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
      r += sign * v * power;
    } else {
      q += sign * term;
      s += sign * v * power;
    }
    last = std::fabs(term);
    if (last < 1e-17) break;
  }
  const double sz = std::sin(zeta);
  const double cz = std::cos(zeta);
  const double cos_shift = (cz + sz) * std::numbers::sqrt2 / 2.0;  // cos(zeta - pi/4)
  const double sin_shift = (sz - cz) * std::numbers::sqrt2 / 2.0;  // sin(zeta - pi/4)
  return {kInvSqrtPi / quarter * (cos_shift * p + sin_shift * q),
          kInvSqrtPi * quarter * (sin_shift * r - cos_shift * s)};
}

double zero_estimate(int n) {
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
  const double t2 = 1.0 / (t * t);
  return -std::pow(t, 2.0 / 3.0) *
         (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
}

double compute_zero(int n) {
  const double guess = zero_estimate(n);
  double lo = guess - 0.1;
  double hi = guess + 0.1;
  double f_lo = detail::airy_unchecked(lo).ai;
  double f_hi = detail::airy_unchecked(hi).ai;
  while (f_lo * f_hi > 0.0) {
    lo -= 0.05;
    hi += 0.05;
    f_lo = detail::airy_unchecked(lo).ai;
    f_hi = detail::airy_unchecked(hi).ai;
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = detail::airy_unchecked(mid).ai;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  const AiryValue at = detail::airy_unchecked(x);
  x -= at.ai / at.ai_prime;
  return x;
}

const std::array<double, kMaxAiryZeroIndex>& zero_table() {
  static const std::array<double, kMaxAiryZeroIndex> table = [] {
    std::array<double, kMaxAiryZeroIndex> zeros{};
    for (int n = 1; n <= kMaxAiryZeroIndex; ++n) zeros[n - 1] = compute_zero(n);
    return zeros;
  }();
  return table;
}

std::complex<double> checked_exp(std::complex<double> z, const char* what) {
  if (z.real() > 700.0) {
    std::ostringstream msg;
    msg << what << ": result overflows (exponent " << z.real() << ")";
    throw Error(ErrorKind::range, msg.str());
  }
  return std::exp(z);
}

// Trapezoid rule for w(z) = (i/pi) int e^{-t^2}/(z - t) dt with step h. The
// node set is shifted by h/2 whenever Re z sits close to an unshifted node; the
// pole of the integrand adds 2 e^{-z^2}/(1 -/+ e^{-2 pi i z/h}) below Im z = pi/h.
constexpr double kFaddeevaStep = 0.5;
constexpr int kFaddeevaTerms = 14;

struct FaddeevaNodes {
  std::array<double, kFaddeevaTerms> node{};
  std::array<double, kFaddeevaTerms> weight{};
};

const FaddeevaNodes& faddeeva_nodes(bool shifted) {
  static const auto build = [](bool half) {
    FaddeevaNodes nodes;
    for (int n = 0; n < kFaddeevaTerms; ++n) {
      const double t = (half ? n + 0.5 : n) * kFaddeevaStep;
      nodes.node[n] = t * t;
      nodes.weight[n] = std::exp(-t * t);
    }
    return nodes;
  };
  static const FaddeevaNodes plain = build(false);
  static const FaddeevaNodes half = build(true);
  return shifted ? half : plain;
}

std::complex<double> faddeeva_upper(std::complex<double> z) {
  constexpr double h = kFaddeevaStep;
  const double s = z.real() / h;
  const bool shifted = std::fabs(s - std::nearbyint(s)) <= 0.25;
  const FaddeevaNodes& nodes = faddeeva_nodes(shifted);
  const std::complex<double> z2 = z * z;
  std::complex<double> sum = 0.0;
  int first = 0;
  if (!shifted) {
    sum = 1.0 / z;
    first = 1;
  }
  for (int n = first; n < kFaddeevaTerms; ++n) {
    sum += nodes.weight[n] * 2.0 * z / (z2 - nodes.node[n]);
  }
  std::complex<double> result = std::complex<double>(0.0, h / std::numbers::pi) * sum;
  if (z.imag() < std::numbers::pi / h) {
    const std::complex<double> rot = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / h) * z);
    const std::complex<double> pole = 2.0 * std::exp(-z2) * rot;
    result += shifted ? pole / (rot + 1.0) : pole / (rot - 1.0);
  }
  return result;
}

}  // namespace

namespace detail {

AiryValue airy_unchecked(double x) {
  if (x < kSeriesLower) return airy_asymptotic_negative(x);
  if (x <= kSeriesUpper) return airy_series(x);
  return airy_asymptotic_positive(x);
}

}  // namespace detail

AiryValue airy_ai(double x) {
  if (!std::isfinite(x) || x < kAiryMinArgument || x > kAiryMaxArgument) {
    std::ostringstream msg;
    msg << "airy_ai: argument " << x << " outside the supported interval ["
        << kAiryMinArgument << ", " << kAiryMaxArgument << "]";
    throw Error(ErrorKind::range, msg.str());
  }
  return detail::airy_unchecked(x);
}

AiryZero airy_zero(int n) {
  if (n < 1 || n > kMaxAiryZeroIndex) {
    std::ostringstream msg;
    msg << "airy_zero: index " << n << " outside [1, " << kMaxAiryZeroIndex << "]";
    throw Error(ErrorKind::range, msg.str());
  }
  return {n, zero_table()[n - 1]};
}

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::range, "faddeeva_w: non-finite argument");
  }
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z) below the real axis
  return 2.0 * checked_exp(-z * z, "faddeeva_w") - faddeeva_upper(-z);
}

std::complex<double> erfc_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::fabs(z.real()) > 1e3 ||
      std::fabs(z.imag()) > 1e3) {
    std::ostringstream msg;
    msg << "erfc_complex: argument " << z << " outside |Re z|, |Im z| <= 1000";
    throw Error(ErrorKind::range, msg.str());
  }
  // Exactly one of z, -z takes the direct branch so the reflection identity is exact.
  const bool direct = z.real() > 0.0 || (z.real() == 0.0 && z.imag() >= 0.0);
  if (!direct) return 2.0 - erfc_complex(-z);
  const std::complex<double> iz(-z.imag(), z.real());
  return checked_exp(-z * z, "erfc_complex") * faddeeva_upper(iz);
}

}  // namespace quench
