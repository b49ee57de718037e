#ifndef QKR_DETAIL_CONVOLUTION_HPP
#define QKR_DETAIL_CONVOLUTION_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qkr/kernel.hpp"

namespace qkr::detail {

// Bandwidth above which the transform-based engine takes over.
inline constexpr std::int64_t kTransformBandwidth = 64;

// out[i] = sum_m K_m in[i - m]; samples outside [0, N) are zero (linear, not circular).
inline std::vector<complex> convolveBanded(std::span<const complex> in, const KickKernel& kernel) {
  const auto n = static_cast<std::int64_t>(in.size());
  const std::int64_t band = kernel.bandwidth;
  std::vector<complex> out(in.size());
  for (std::int64_t i = 0; i < n; ++i) {
    complex acc{};
    const std::int64_t lo = std::max<std::int64_t>(-band, i - n + 1);
    const std::int64_t hi = std::min<std::int64_t>(band, i);
    for (std::int64_t m = lo; m <= hi; ++m) {
      acc += kernel.entries[static_cast<std::size_t>(m + band)] * in[static_cast<std::size_t>(i - m)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

// Same linear convolution through a zero-padded FFT of length >= N + 2M.
inline std::vector<complex> convolveTransform(std::span<const complex> in, const KickKernel& kernel) {
  const auto n = in.size();
  const auto band = static_cast<std::size_t>(kernel.bandwidth);
  std::size_t len = 1;
  while (len < n + 2 * band) len <<= 1;

  std::vector<complex> signal(len), taps(len);
  std::copy(in.begin(), in.end(), signal.begin());
  for (std::int64_t m = -kernel.bandwidth; m <= kernel.bandwidth; ++m) {
    const auto slot = static_cast<std::size_t>((m + static_cast<std::int64_t>(len)) %
                                               static_cast<std::int64_t>(len));
    taps[slot] = kernel.at(m);
  }

  Eigen::FFT<double> fft;
  std::vector<complex> signalHat, tapsHat, product;
  fft.fwd(signalHat, signal);
  fft.fwd(tapsHat, taps);
  for (std::size_t k = 0; k < len; ++k) signalHat[k] *= tapsHat[k];
  fft.inv(product, signalHat);  // scaled by 1/len
  return {product.begin(), product.begin() + static_cast<std::ptrdiff_t>(n)};
}

inline std::vector<complex> convolve(std::span<const complex> in, const KickKernel& kernel) {
  return kernel.bandwidth > kTransformBandwidth ? convolveTransform(in, kernel)
                                                : convolveBanded(in, kernel);
}

}  // namespace qkr::detail

#endif  // QKR_DETAIL_CONVOLUTION_HPP
