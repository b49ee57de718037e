#ifndef QKR_KERNEL_HPP
#define QKR_KERNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/bessel.hpp"

namespace qkr {

using complex = std::complex<double>;

inline constexpr std::int64_t kMaxKernelBandwidth = 10'000;
// Squared mass left outside the band. The per-kick norm error of the truncated
// map is first order in the dropped amplitudes (cross terms J_0 J_{M+1} against
// the state's autocorrelation), i.e. ~sqrt(tol), so the default sits at 1e-32.
inline constexpr double kDefaultKernelTolerance = 1e-32;

/// i^m, exact, by m mod 4.
inline complex iPow(std::int64_t m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// Banded kick convolution kernel K_m = i^m J_m(kappa), m in [-M, M].
struct KickKernel {
  double kappa = 0.0;
  std::int64_t bandwidth = 0;
  std::vector<complex> entries;  // entries[m + bandwidth]
  double tailMass = 0.0;         // sum_{|m| > M} J_m(kappa)^2 left out of the band

  [[nodiscard]] complex at(std::int64_t m) const {
    if (m < -bandwidth || m > bandwidth) return {0.0, 0.0};
    return entries[static_cast<std::size_t>(m + bandwidth)];
  }

  /// sum_{|m| <= M} J_m^2 = sum_{|m| <= M} |K_m|^2.
  [[nodiscard]] double bandMass() const {
    double sum = 0.0;
    for (const complex& k : entries) sum += std::norm(k);
    return sum;
  }
};

/// Smallest band with squared Bessel mass outside it below `tol`.
/// The tail is summed directly from the high orders down rather than taken as
/// 1 - sum J_m^2, which would bottom out at rounding level near tol = 1e-16.
inline KickKernel buildKernel(double kappa, double tol = kDefaultKernelTolerance) {
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw std::invalid_argument("buildKernel: kappa must be finite and >= 0");
  }
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("buildKernel: tol must lie in (0, 1)");
  if (kappa > static_cast<double>(kMaxKernelBandwidth)) {
    throw std::runtime_error("buildKernel: kappa " + std::to_string(kappa) +
                             " needs a bandwidth beyond the cap of " +
                             std::to_string(kMaxKernelBandwidth));
  }

  const std::int64_t top = detail::millerStart(0, kappa);
  const std::vector<double> j = besselSequence(top, kappa);

  // tail[M] = 2 * sum_{m > M} J_m^2
  std::vector<double> tail(j.size(), 0.0);
  for (std::int64_t m = top - 1; m >= 0; --m) {
    const double next = j[static_cast<std::size_t>(m + 1)];
    tail[static_cast<std::size_t>(m)] = tail[static_cast<std::size_t>(m + 1)] + 2.0 * next * next;
  }
  std::int64_t band = 0;
  while (band <= top && tail[static_cast<std::size_t>(band)] >= tol) ++band;
  if (band > top || band > kMaxKernelBandwidth) {
    std::ostringstream msg;
    msg << "buildKernel: tolerance " << tol << " not reachable below bandwidth "
        << kMaxKernelBandwidth << " at kappa " << kappa;
    throw std::runtime_error(msg.str());
  }

  KickKernel kernel{kappa, band, std::vector<complex>(static_cast<std::size_t>(2 * band + 1)),
                    tail[static_cast<std::size_t>(band)]};
  for (std::int64_t m = -band; m <= band; ++m) {
    const std::int64_t n = m < 0 ? -m : m;
    double jm = j[static_cast<std::size_t>(n)];
    if (m < 0 && n % 2 == 1) jm = -jm;
    kernel.entries[static_cast<std::size_t>(m + band)] = iPow(m) * jm;
  }
  return kernel;
}

}  // namespace qkr

#endif  // QKR_KERNEL_HPP
