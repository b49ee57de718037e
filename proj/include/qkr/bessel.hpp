#ifndef QKR_BESSEL_HPP
#define QKR_BESSEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkr {

inline constexpr std::int64_t kMaxBesselOrder = 1'000'000;

namespace detail {

inline void checkBesselArgument(double x) {
  if (!std::isfinite(x)) throw std::domain_error("besselJ: argument must be finite");
  if (x < 0.0) throw std::domain_error("besselJ: argument must be non-negative");
}

// Ascending series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!), used for x < 1.
inline double besselSeries(std::int64_t n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (std::int64_t j = 1; j <= n && term != 0.0; ++j) term *= half / static_cast<double>(j);
  if (term == 0.0) return 0.0;
  const double h2 = half * half;
  double sum = term;
  for (int k = 1; k < 64; ++k) {
    term *= -h2 / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Starting order for the backward recurrence: far enough past both the
// requested order and the turning point that J_start(x) is negligible.
inline std::int64_t millerStart(std::int64_t maxOrder, double x) {
  const double reach = std::max(static_cast<double>(maxOrder), std::ceil(x));
  auto start = static_cast<std::int64_t>(reach + 30.0 + std::sqrt(160.0 * (reach + 1.0)));
  return start + (start % 2);  // even, so the sum rule sees J_0 + 2 sum J_2k
}

// J_0..J_maxOrder for x >= 1 by Miller's backward recurrence,
// normalized with J_0 + 2 sum_{k>=1} J_{2k} = 1.
inline std::vector<double> besselMiller(std::int64_t maxOrder, double x) {
  constexpr double kBig = 1e250;
  constexpr double kRescale = 1e-250;
  std::vector<double> out(static_cast<std::size_t>(maxOrder + 1), 0.0);
  const std::int64_t start = millerStart(maxOrder, x);
  const double twoOverX = 2.0 / x;

  double above = 0.0;   // J_{k+1}
  double cur = 1e-300;  // J_k, arbitrary seed
  double norm = 0.0;
  for (std::int64_t k = start; k >= 0; --k) {
    if (k <= maxOrder) out[static_cast<std::size_t>(k)] = cur;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * cur;
    if (k == 0) break;
    const double below = static_cast<double>(k) * twoOverX * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kBig) {
      cur *= kRescale;
      above *= kRescale;
      norm *= kRescale;
      for (std::int64_t j = k; j <= maxOrder; ++j) out[static_cast<std::size_t>(j)] *= kRescale;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace detail

/// J_0(x) .. J_maxOrder(x) for x >= 0.
inline std::vector<double> besselSequence(std::int64_t maxOrder, double x) {
  detail::checkBesselArgument(x);
  if (maxOrder < 0 || maxOrder > kMaxBesselOrder) {
    throw std::domain_error("besselSequence: order out of range");
  }
  std::vector<double> out(static_cast<std::size_t>(maxOrder + 1), 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < 1.0) {
    for (std::int64_t n = 0; n <= maxOrder; ++n) {
      out[static_cast<std::size_t>(n)] = detail::besselSeries(n, x);
      if (out[static_cast<std::size_t>(n)] == 0.0) break;  // remaining orders underflow too
    }
    return out;
  }
  return detail::besselMiller(maxOrder, x);
}

/// Bessel function of the first kind of integer order.
/// Negative orders use J_{-m}(x) = (-1)^m J_m(x).
inline double besselJ(std::int64_t m, double x) {
  detail::checkBesselArgument(x);
  const std::int64_t n = m < 0 ? -m : m;
  if (n > kMaxBesselOrder) {
    throw std::domain_error("besselJ: |order| exceeds " + std::to_string(kMaxBesselOrder));
  }
  double value = 0.0;
  if (x == 0.0) {
    value = n == 0 ? 1.0 : 0.0;
  } else if (x < 1.0) {
    value = detail::besselSeries(n, x);
  } else {
    value = detail::besselMiller(n, x).back();
  }
  return (m < 0 && n % 2 == 1) ? -value : value;
}

}  // namespace qkr

#endif  // QKR_BESSEL_HPP
