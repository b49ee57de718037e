#ifndef QKR_SPINOR_HPP
#define QKR_SPINOR_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkr/types.hpp"

namespace qkr {

namespace detail {

inline void checkGamma(double gamma) {
  if (!std::isfinite(gamma) || !(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be finite and > 0");
  }
}

// B_q = gamma^2 q^2 / (sqrt(1 + gamma^2 q^2) + 1)^2 = beta_q^2, where beta_q is the
// lower-to-upper amplitude ratio of the positive-energy free-rotor spinor.
inline long double bracketTerm(std::int64_t q, double gamma) {
  const long double x = static_cast<long double>(gamma) * static_cast<long double>(q);
  const long double root = std::sqrt(1.0L + x * x) + 1.0L;
  return x * x / (root * root);
}

}  // namespace detail

/// Normalization constant N_q of the positive-energy free-rotor spinor:
///   N_q = 1 / sqrt(2 pi [1 + gamma^2 q^2 / (sqrt(1 + gamma^2 q^2) + 1)^2]).
inline double normConstant(std::int64_t q, double gamma) {
  detail::checkGamma(gamma);
  const double x = gamma * static_cast<double>(q);
  const double root = std::sqrt(1.0 + x * x) + 1.0;
  return 1.0 / std::sqrt(2.0 * std::numbers::pi * (1.0 + x * x / (root * root)));
}

/// Spinor overlap Omega_{r,q} = 2 pi N_r N_q + sqrt((1 - 2 pi N_r^2)(1 - 2 pi N_q^2)).
/// With 2 pi N_q^2 = 1 / (1 + B_q), B_q the bracket term of N_q, this is
///   (1 + sqrt(B_r B_q)) / sqrt((1 + B_r)(1 + B_q)),
/// which avoids the cancellation in 1 - 2 pi N^2 at small gamma|q| and is exactly
/// one on the diagonal. Evaluated in extended precision and rounded once; this is
/// the reference route, the propagators use the separable RelativisticWeights.
inline double omega(std::int64_t r, std::int64_t q, double gamma) {
  detail::checkGamma(gamma);
  if (r > q) std::swap(r, q);  // identical rounding for (r, q) and (q, r)
  const long double br = detail::bracketTerm(r, gamma);
  const long double bq = detail::bracketTerm(q, gamma);
  return static_cast<double>((1.0L + std::sqrt(br * bq)) / std::sqrt((1.0L + br) * (1.0L + bq)));
}

/// Per-level spinor weights with Omega_{r,q} = c_r c_q + s_r s_q.
/// c_q = sqrt(2 pi) N_q is the upper-component weight, s_q = sqrt(1 - c_q^2)
/// the lower-component weight, u_q = 1 - c_q kept separately to full relative precision.
struct RelativisticWeights {
  BasisWindow window;
  double gamma = 0.0;
  std::vector<double> c;
  std::vector<double> s;
  std::vector<double> u;

  [[nodiscard]] double cAt(std::int64_t q) const { return c[window.index(q)]; }
  [[nodiscard]] double sAt(std::int64_t q) const { return s[window.index(q)]; }
  [[nodiscard]] double omegaAt(std::int64_t r, std::int64_t q) const {
    return cAt(r) * cAt(q) + sAt(r) * sAt(q);
  }
};

inline RelativisticWeights buildWeights(const BasisWindow& window, double gamma) {
  detail::checkGamma(gamma);
  RelativisticWeights w{window, gamma, std::vector<double>(window.size()),
                        std::vector<double>(window.size()), std::vector<double>(window.size())};
  for (std::size_t i = 0; i < window.size(); ++i) {
    // c = 1/sqrt(1+beta^2), s = beta/sqrt(1+beta^2): the same pair as
    // sqrt(2 pi) N_q and sqrt(1 - 2 pi N_q^2), without the cancellation in 1 - c^2.
    // Extended precision so that each weight is rounded once.
    const long double b = detail::bracketTerm(window.q(i), gamma);
    const long double root = std::sqrt(1.0L + b);
    const long double inv = 1.0L / root;
    w.c[i] = static_cast<double>(inv);
    w.s[i] = static_cast<double>(std::sqrt(b) * inv);
    w.u[i] = static_cast<double>(b / (root * (1.0L + root)));
  }
  return w;
}

}  // namespace qkr

#endif  // QKR_SPINOR_HPP
