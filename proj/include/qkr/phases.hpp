#ifndef QKR_PHASES_HPP
#define QKR_PHASES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qkr/detail/angle.hpp"
#include "qkr/types.hpp"

namespace qkr {

/// Free-evolution phases per period for each q in a window, in radians.
///
/// nrPhase and relPhase are reduced into [0, 2 pi) with extended-precision
/// argument reduction (tau q^2 / 2 reaches ~1e10 rad at the usual parameters).
/// relDeficit = tau q^2/2 - tau gamma^-2 (sqrt(1 + gamma^2 q^2) - 1) is kept
/// unreduced; it is small in the non-relativistic regime and is what the
/// extra phase tau gamma^2 q^4 / 8 approximates.
struct PhaseTable {
  BasisWindow window;
  std::vector<double> nrPhase;
  std::vector<double> relPhase;
  std::vector<double> extraPhase;
  std::vector<double> relDeficit;

  /// Unit factors e^{-i phase(q)} applied after each kick for the given theory.
  /// REL_APPROX uses e^{-i nrPhase} e^{+i extraPhase}.
  [[nodiscard]] std::vector<std::complex<double>> factors(Theory theory) const {
    std::vector<std::complex<double>> out(window.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      double angle = 0.0;
      switch (theory) {
        case Theory::NR: angle = nrPhase[i]; break;
        case Theory::REL: angle = relPhase[i]; break;
        case Theory::REL_APPROX:
          // both terms lie in [0, 2 pi), so one wrap suffices
          angle = nrPhase[i] - detail::reduceTwoPi(extraPhase[i]);
          if (angle < 0.0) angle += detail::kTwoPiHi;
          break;
      }
      out[i] = {std::cos(angle), -std::sin(angle)};
    }
    return out;
  }
};

inline PhaseTable buildPhases(const DimensionlessParams& params, const BasisWindow& window) {
  params.validate();
  const std::size_t n = window.size();
  PhaseTable table{window, std::vector<double>(n), std::vector<double>(n),
                   std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto q = static_cast<double>(window.q(i));
    const double q2 = q * q;
    const auto exact = detail::twoProduct(params.tau, q2);
    table.nrPhase[i] = detail::reduceTwoPi(0.5 * exact.hi, 0.5 * exact.lo);

    const double x = (params.gamma * q) * (params.gamma * q);
    const double root = std::sqrt(1.0 + x) + 1.0;
    table.relDeficit[i] = params.tau * q2 * x / (2.0 * root * root);
    table.relPhase[i] =
        detail::reduceTwoPi(table.nrPhase[i] - detail::reduceTwoPi(table.relDeficit[i]));

    table.extraPhase[i] = params.tau * x * q2 / 8.0;
  }
  return table;
}

}  // namespace qkr

#endif  // QKR_PHASES_HPP
