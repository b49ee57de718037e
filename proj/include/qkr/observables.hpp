#ifndef QKR_OBSERVABLES_HPP
#define QKR_OBSERVABLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qkr/spinor.hpp"
#include "qkr/state.hpp"
#include "qkr/types.hpp"

namespace qkr {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Angular probability density rho(phi_j) on phi_j = 2 pi j / M, per radian.
struct AngularDensity {
  std::size_t gridSize = 0;
  std::vector<double> values;

  [[nodiscard]] double angle(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(gridSize);
  }
  /// Riemann sum (2 pi / M) sum_j rho_j; exact for a band-limited density.
  [[nodiscard]] double integral() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return 2.0 * std::numbers::pi * sum / static_cast<double>(gridSize);
  }
};

namespace detail {

inline void checkGrid(const BasisWindow& window, std::size_t gridSize) {
  if (gridSize < 2 * window.size()) {
    throw std::invalid_argument("density grid of " + std::to_string(gridSize) +
                                " points aliases a window of " + std::to_string(window.size()) +
                                " modes; need at least " + std::to_string(2 * window.size()));
  }
}

// psi(phi_j) = sum_q coeff_q weight_q e^{i q phi_j} / sqrt(2 pi), by one inverse FFT.
inline std::vector<std::complex<double>> synthesize(const SpectralState& state,
                                                    const std::vector<double>* weight,
                                                    std::size_t gridSize) {
  const auto m = static_cast<std::int64_t>(gridSize);
  std::vector<std::complex<double>> spectrum(gridSize);
  for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
    const std::int64_t slot = ((state.window.q(i) % m) + m) % m;
    spectrum[static_cast<std::size_t>(slot)] = weight ? state.coeffs[i] * (*weight)[i] : state.coeffs[i];
  }
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<std::complex<double>> field;
  fft.inv(field, spectrum);
  return field;
}

}  // namespace detail

/// |psi(phi)|^2 from free-rotor coefficients (upper spinor component only for REL_APPROX).
inline AngularDensity densityNR(const SpectralState& state, std::size_t gridSize = kDefaultGridSize) {
  if (state.theory == Theory::REL) {
    throw std::invalid_argument("densityNR: relativistic states need densityREL");
  }
  detail::checkGrid(state.window, gridSize);
  const auto field = detail::synthesize(state, nullptr, gridSize);
  AngularDensity d{gridSize, std::vector<double>(gridSize)};
  for (std::size_t j = 0; j < gridSize; ++j) d.values[j] = std::norm(field[j]) / (2.0 * std::numbers::pi);
  return d;
}

/// |psi_1|^2 + |psi_4|^2 of the positive-energy spinor expansion.
inline AngularDensity densityREL(const SpectralState& state, const RelativisticWeights& weights,
                                 std::size_t gridSize = kDefaultGridSize) {
  if (state.theory != Theory::REL) throw std::invalid_argument("densityREL: state is not relativistic");
  if (weights.window != state.window) {
    throw std::invalid_argument("densityREL: weights window does not match state window");
  }
  detail::checkGrid(state.window, gridSize);
  const auto upper = detail::synthesize(state, &weights.c, gridSize);
  const auto lower = detail::synthesize(state, &weights.s, gridSize);
  AngularDensity d{gridSize, std::vector<double>(gridSize)};
  for (std::size_t j = 0; j < gridSize; ++j) {
    d.values[j] = (std::norm(upper[j]) + std::norm(lower[j])) / (2.0 * std::numbers::pi);
  }
  return d;
}

struct AngularMoments {
  double mean = 0.0;
  double stddev = 0.0;
  double norm = 0.0;
  bool varianceClipped = false;
};

/// Mean and spread of the angle, normalized by the density's integral.
///
/// INTERVAL: moments of phi on [0, 2 pi). Integrated exactly against the
/// trigonometric interpolant of the samples,
///   int phi   e^{ik phi} = -2 pi i / k,
///   int phi^2 e^{ik phi} = -4 pi^2 i / k + 4 pi / k^2   (k != 0),
/// so the result does not depend on the grid once the density is resolved.
/// A plain Riemann sum of phi rho(phi) is only first-order accurate because
/// phi jumps at the 0 / 2 pi seam.
///
/// CIRCULAR: mean direction arg(z) in [0, 2 pi) and circular standard
/// deviation sqrt(-2 ln |z|), z = <e^{i phi}>.
inline AngularMoments angularMoments(const AngularDensity& d,
                                     MeanConvention convention = MeanConvention::INTERVAL) {
  const std::size_t m = d.gridSize;
  std::vector<std::complex<double>> samples(d.values.begin(), d.values.end());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> hat;
  fft.fwd(hat, samples);
  for (auto& h : hat) h /= static_cast<double>(m);  // rho(phi) = sum_k hat_k e^{ik phi}

  constexpr double pi = std::numbers::pi;
  AngularMoments out;
  const double f0 = hat[0].real();
  out.norm = 2.0 * pi * f0;

  double variance = 0.0;
  if (convention == MeanConvention::INTERVAL) {
    const std::size_t kmax = (m + 1) / 2 - 1;  // Nyquist handled separately
    double first = 0.0;
    double second = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const auto kk = static_cast<double>(k);
      first += hat[k].imag() / kk;
      second += 4.0 * pi * hat[k].imag() / kk + 4.0 * hat[k].real() / (kk * kk);
    }
    if (m % 2 == 0) {
      const double nyq = static_cast<double>(m / 2);
      second += 2.0 * hat[m / 2].real() / (nyq * nyq);
    }
    out.mean = pi + 2.0 * first / f0;
    const double meanSquare = 4.0 * pi * pi / 3.0 + second / f0;
    variance = meanSquare - out.mean * out.mean;
  } else {
    const std::complex<double> z = std::conj(hat[1]) / f0;
    double angle = std::arg(z);
    if (angle < 0.0) angle += 2.0 * pi;
    out.mean = std::abs(z) == 0.0 ? std::numeric_limits<double>::quiet_NaN() : angle;
    variance = -2.0 * std::log(std::abs(z));
  }
  if (variance < 0.0) {
    out.varianceClipped = true;
    variance = 0.0;
  }
  out.stddev = std::sqrt(variance);
  return out;
}

inline double meanAngle(const AngularDensity& d, MeanConvention c = MeanConvention::INTERVAL) {
  return angularMoments(d, c).mean;
}

inline double stdAngle(const AngularDensity& d, MeanConvention c = MeanConvention::INTERVAL) {
  return angularMoments(d, c).stddev;
}

/// 100 |rel - nr| / |rel|; NaN when the relativistic value is zero.
inline double relDiffPct(double relValue, double nrValue) {
  if (relValue == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * std::abs(relValue - nrValue) / std::abs(relValue);
}

/// |<a|b>| over a shared window.
inline double overlap(const SpectralState& a, const SpectralState& b) {
  if (a.window != b.window) {
    throw std::invalid_argument("overlap: windows " + a.window.str() + " and " + b.window.str() +
                                " differ");
  }
  std::complex<double> sum{};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) sum += std::conj(a.coeffs[i]) * b.coeffs[i];
  return std::abs(sum);
}

}  // namespace qkr

#endif  // QKR_OBSERVABLES_HPP
