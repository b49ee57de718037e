#ifndef QKR_PROPAGATORS_HPP
#define QKR_PROPAGATORS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qkr/detail/convolution.hpp"
#include "qkr/kernel.hpp"
#include "qkr/phases.hpp"
#include "qkr/spinor.hpp"
#include "qkr/state.hpp"
#include "qkr/types.hpp"

namespace qkr {

inline constexpr double kDefaultBoundaryThreshold = 1e-14;
inline constexpr double kSelfCheckTolerance = 1e-12;

struct PlanOptions {
  Method method = Method::FAST;
  double kernelTolerance = kDefaultKernelTolerance;
  double boundaryTailThreshold = kDefaultBoundaryThreshold;
  bool selfCheck = false;  // FAST steps also run DIRECT and compare
};

/// Everything one theory needs to advance a state by one period on a fixed window.
struct StepPlan {
  DimensionlessParams params;
  BasisWindow window;
  Theory theory = Theory::NR;
  Method method = Method::FAST;
  KickKernel kernel;
  PhaseTable phases;
  std::optional<RelativisticWeights> weights;  // REL only
  std::vector<complex> phaseFactors;           // e^{-i phase(r)} for this theory
  std::vector<double> omegaMatrix;             // literal Omega_{r,q}, REL + DIRECT or self-check
  double boundaryTailThreshold = kDefaultBoundaryThreshold;
  bool selfCheck = false;
};

inline StepPlan makePlan(const DimensionlessParams& params, const BasisWindow& window,
                         Theory theory, const PlanOptions& options = {}) {
  params.validate();
  StepPlan plan;
  plan.params = params;
  plan.window = window;
  plan.theory = theory;
  plan.method = options.method;
  plan.kernel = buildKernel(params.kappa, options.kernelTolerance);
  plan.phases = buildPhases(params, window);
  plan.phaseFactors = plan.phases.factors(theory);
  plan.boundaryTailThreshold = options.boundaryTailThreshold;
  plan.selfCheck = options.selfCheck;
  if (theory == Theory::REL) {
    plan.weights = buildWeights(window, params.gamma);
    if (options.method == Method::DIRECT || options.selfCheck) {
      const std::size_t n = window.size();
      plan.omegaMatrix.resize(n * n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t q = 0; q < n; ++q) {
          plan.omegaMatrix[r * n + q] = omega(window.q(r), window.q(q), params.gamma);
        }
      }
    }
  }
  return plan;
}

namespace detail {

// Literal double sum: out_r = e^{-i phase_r} sum_q K_{r-q} [Omega_{r,q}] in_q.
inline std::vector<complex> kickDirect(const std::vector<complex>& in, const StepPlan& plan) {
  const std::size_t n = in.size();
  const bool rel = plan.theory == Theory::REL;
  std::vector<complex> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    complex acc{};
    for (std::size_t q = 0; q < n; ++q) {
      const complex k = plan.kernel.at(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(q));
      if (k == complex{}) continue;
      const double overlap = rel ? plan.omegaMatrix[r * n + q] : 1.0;
      acc += k * overlap * in[q];
    }
    out[r] = plan.phaseFactors[r] * acc;
  }
  return out;
}

// Banded / transform path. For REL, Omega_{r,q} = c_r c_q + s_r s_q splits the
// sum into ordinary convolutions. With c = 1 - u this is
//   (K*A)_r - u_r (K*A)_r - (K*(uA))_r + u_r (K*(uA))_r + s_r (K*(sA))_r,
// the same identity arranged so that the O(1) part is the plain convolution and
// only small terms carry the weights. Multiplying by c_r c_r + s_r s_r instead
// rounds each mode by a fixed factor every kick, a bias that compounds.
inline std::vector<complex> kickFast(const std::vector<complex>& in, const StepPlan& plan) {
  const std::size_t n = in.size();
  std::vector<complex> out = convolve(in, plan.kernel);
  if (plan.theory == Theory::REL) {
    const auto& w = *plan.weights;
    std::vector<complex> deficit(n), lower(n);
    for (std::size_t i = 0; i < n; ++i) {
      deficit[i] = w.u[i] * in[i];
      lower[i] = w.s[i] * in[i];
    }
    const auto deficitKicked = convolve(deficit, plan.kernel);
    const auto lowerKicked = convolve(lower, plan.kernel);
    for (std::size_t r = 0; r < n; ++r) {
      const complex correction = w.u[r] * (deficitKicked[r] - out[r]) - deficitKicked[r] + w.s[r] * lowerKicked[r];
      out[r] += correction;
    }
  }
  for (std::size_t r = 0; r < n; ++r) out[r] *= plan.phaseFactors[r];
  return out;
}

// Mass in the outermost max(M, 1) modes at each edge of the window.
inline double edgeMass(const std::vector<complex>& coeffs, std::int64_t bandwidth) {
  const auto n = coeffs.size();
  const auto edge = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(bandwidth, 1)), n);
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < edge || i >= n - edge) mass += std::norm(coeffs[i]);
  }
  return mass;
}

inline SpectralState kick(const SpectralState& state, const StepPlan& plan) {
  if (state.window != plan.window) {
    throw std::invalid_argument("step: state window " + state.window.str() +
                                " does not match plan window " + plan.window.str());
  }
  SpectralState next{state.window, {}, state.kickCount + 1, state.theory, 0.0};
  if (plan.method == Method::DIRECT) {
    next.coeffs = kickDirect(state.coeffs, plan);
  } else {
    next.coeffs = kickFast(state.coeffs, plan);
    if (plan.selfCheck) {
      const auto reference = kickDirect(state.coeffs, plan);
      double worst = 0.0;
      for (std::size_t i = 0; i < reference.size(); ++i) {
        worst = std::max(worst, std::abs(reference[i] - next.coeffs[i]));
      }
      if (!(worst <= kSelfCheckTolerance)) {
        std::ostringstream msg;
        msg << "fast and direct kick disagree by " << worst << " at kick " << next.kickCount;
        throw ConsistencyError(msg.str());
      }
    }
  }
  next.boundaryMass = edgeMass(next.coeffs, plan.kernel.bandwidth);
  if (next.boundaryMass > plan.boundaryTailThreshold) {
    throw WindowExhausted(next.kickCount, next.boundaryMass, next.window);
  }
  return next;
}

inline void requireTheory(const SpectralState& state, const StepPlan& plan, Theory expected,
                          const char* op) {
  if (state.theory != expected || plan.theory != expected) {
    throw std::invalid_argument(std::string(op) + ": state and plan must both be tagged " +
                                std::string(to_string(expected)));
  }
}

}  // namespace detail

/// Non-relativistic map: a'_r = e^{-i tau r^2/2} sum_m i^m J_m(kappa) a_{r-m}.
inline SpectralState stepNR(const SpectralState& state, const StepPlan& plan) {
  detail::requireTheory(state, plan, Theory::NR, "stepNR");
  if (plan.weights) throw std::invalid_argument("stepNR: plan must not carry relativistic weights");
  return detail::kick(state, plan);
}

/// Relativistic map: A'_r = e^{-i relPhase(r)} sum_m i^m J_m(kappa) Omega_{r,r-m} A_{r-m}.
/// The norm is not restored afterwards; callers monitor it.
inline SpectralState stepREL(const SpectralState& state, const StepPlan& plan) {
  detail::requireTheory(state, plan, Theory::REL, "stepREL");
  if (!plan.weights) throw std::invalid_argument("stepREL: plan is missing relativistic weights");
  return detail::kick(state, plan);
}

/// Non-relativistic map carrying the extra phase e^{+i tau gamma^2 r^4 / 8}.
inline SpectralState stepRELApprox(const SpectralState& state, const StepPlan& plan) {
  detail::requireTheory(state, plan, Theory::REL_APPROX, "stepRELApprox");
  return detail::kick(state, plan);
}

inline SpectralState step(const SpectralState& state, const StepPlan& plan) {
  switch (state.theory) {
    case Theory::NR: return stepNR(state, plan);
    case Theory::REL: return stepREL(state, plan);
    case Theory::REL_APPROX: return stepRELApprox(state, plan);
  }
  throw std::logic_error("step: unknown theory");
}

/// Window around nbar holding all but `tailThreshold` of the initial Gaussian
/// mass, padded by bandwidth * ceil(sqrt(maxKicks)) + 2 * bandwidth for spreading.
inline BasisWindow autoWindow(const DimensionlessParams& params, double sigma0, std::int64_t nbar,
                              std::size_t maxKicks, double tailThreshold,
                              double kernelTolerance = kDefaultKernelTolerance) {
  if (!(tailThreshold > 0.0 && tailThreshold < 1.0)) {
    throw std::invalid_argument("autoWindow: tailThreshold must lie in (0, 1)");
  }
  if (!std::isfinite(sigma0) || !(sigma0 > 0.0)) {
    throw std::invalid_argument("autoWindow: sigma0 must be finite and > 0");
  }
  params.validate();

  // |a_n|^2 ~ exp(-2 sigma0^2 (n - nbar)^2); terms beyond `last` underflow.
  const double width = 2.0 * sigma0 * sigma0;
  std::vector<double> weight{1.0};
  while (weight.back() > 0.0) {
    const auto d = static_cast<double>(weight.size());
    weight.push_back(std::exp(-width * d * d));
  }
  // beyond[d] = mass with |n - nbar| > d, summed from the far end.
  std::vector<double> beyond(weight.size(), 0.0);
  for (std::size_t d = weight.size() - 1; d-- > 0;) beyond[d] = beyond[d + 1] + 2.0 * weight[d + 1];
  const double total = weight[0] + beyond[0];
  std::int64_t half = 0;
  while (beyond[static_cast<std::size_t>(half)] / total >= tailThreshold) ++half;

  const std::int64_t band = buildKernel(params.kappa, kernelTolerance).bandwidth;
  const auto spread = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(maxKicks))));
  const std::int64_t margin = band * spread + 2 * band;
  return {nbar - half - margin, nbar + half + margin};
}

}  // namespace qkr

#endif  // QKR_PROPAGATORS_HPP
