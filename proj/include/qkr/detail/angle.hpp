#ifndef QKR_DETAIL_ANGLE_HPP
#define QKR_DETAIL_ANGLE_HPP

#include <cmath>
#include <stdexcept>

namespace qkr::detail {

// 2 pi split into three doubles; hi + lo + lo2 carries ~160 bits.
inline constexpr double kTwoPiHi = 6.283185307179586;
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;
inline constexpr double kTwoPiLo2 = -5.989539619436679e-33;

// Largest |angle| whose reduction keeps ~1e-15 absolute accuracy.
inline constexpr double kMaxReducibleAngle = 0x1p50;

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

// a * b exactly, as an unevaluated sum.
inline DoubleDouble twoProduct(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// (hi + lo) mod 2 pi, in [0, 2 pi).
inline double reduceTwoPi(double hi, double lo = 0.0) {
  if (!std::isfinite(hi) || std::abs(hi) > kMaxReducibleAngle) {
    throw std::domain_error("phase magnitude too large for accurate reduction");
  }
  const double k = std::nearbyint(hi / kTwoPiHi);
  const double p = k * kTwoPiHi;
  const double e = std::fma(k, kTwoPiHi, -p);  // k * hi_part == p + e exactly
  double r = hi - p;                           // exact: hi and p are within a factor 2
  r = ((r - e) + lo) - k * kTwoPiLo - k * kTwoPiLo2;
  if (r < 0.0) r += kTwoPiHi;
  if (r >= kTwoPiHi) r -= kTwoPiHi;
  return r;
}

}  // namespace qkr::detail

#endif  // QKR_DETAIL_ANGLE_HPP
