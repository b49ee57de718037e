#ifndef QKR_STATE_HPP
#define QKR_STATE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/detail/angle.hpp"
#include "qkr/types.hpp"

namespace qkr {

/// Expansion coefficients over the free-rotor eigenstates of one theory,
/// sampled just before kick `kickCount`.
struct SpectralState {
  BasisWindow window;
  std::vector<std::complex<double>> coeffs;
  std::size_t kickCount = 0;
  Theory theory = Theory::NR;
  double boundaryMass = 0.0;  // edge-band mass measured by the last kick

  [[nodiscard]] double norm() const {
    double sum = 0.0;
    for (const auto& c : coeffs) sum += std::norm(c);
    return sum;
  }

  [[nodiscard]] std::complex<double> at(std::int64_t q) const {
    return window.contains(q) ? coeffs[window.index(q)] : std::complex<double>{};
  }
};

/// Unnormalized Gaussian wavepacket coefficient
///   (2 sigma0^2 / pi)^{1/4} exp(-i n theta0) exp(-sigma0^2 (n - nbar)^2).
inline std::complex<double> gaussianCoefficient(std::int64_t n, double sigma0, double theta0,
                                                std::int64_t nbar) {
  const double amplitude = std::pow(2.0 * sigma0 * sigma0 / std::numbers::pi, 0.25);
  const auto d = static_cast<double>(n - nbar);
  const auto turn = detail::twoProduct(static_cast<double>(n), theta0);
  const double angle = detail::reduceTwoPi(turn.hi, turn.lo);
  return std::polar(amplitude * std::exp(-sigma0 * sigma0 * d * d), -angle);
}

/// Half-width around nbar that the window must cover before building the initial state.
inline std::int64_t initialHalfWidth(double sigma0) {
  return static_cast<std::int64_t>(std::ceil(8.0 / sigma0));
}

/// Gaussian initial state, renormalized to unit norm.
inline SpectralState initialState(double sigma0, double theta0, std::int64_t nbar,
                                  const BasisWindow& window, Theory theory) {
  if (!std::isfinite(sigma0) || !(sigma0 > 0.0)) {
    throw std::invalid_argument("initialState: sigma0 must be finite and > 0");
  }
  if (!std::isfinite(theta0) || theta0 < 0.0 || theta0 >= 2.0 * std::numbers::pi) {
    throw std::invalid_argument("initialState: theta0 must lie in [0, 2 pi)");
  }
  const std::int64_t half = initialHalfWidth(sigma0);
  const BasisWindow required{nbar - half, nbar + half};
  if (!window.contains(required)) {
    throw std::invalid_argument("initialState: window " + window.str() + " must contain " +
                                required.str() + " (" + std::to_string(required.size()) +
                                " modes around nbar)");
  }

  SpectralState state{window, std::vector<std::complex<double>>(window.size()), 0, theory, 0.0};
  for (std::size_t i = 0; i < window.size(); ++i) {
    state.coeffs[i] = gaussianCoefficient(window.q(i), sigma0, theta0, nbar);
  }
  const double scale = 1.0 / std::sqrt(state.norm());
  for (auto& c : state.coeffs) c *= scale;
  return state;
}

}  // namespace qkr

#endif  // QKR_STATE_HPP
