#ifndef QKR_TYPES_HPP
#define QKR_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qkr {

/// The three dimensionless knobs that fully define a kicked-rotor run.
///
///   gamma = hbar / (m0 c R)   relativistic scale of the ring
///   kappa = e V T / hbar      kick strength
///   tau   = hbar T / (m0 R^2) free-evolution phase per period
struct DimensionlessParams {
  double gamma = 0.0;
  double kappa = 0.0;
  double tau = 0.0;

  void validate() const {
    if (!std::isfinite(gamma) || !std::isfinite(kappa) || !std::isfinite(tau)) {
      throw std::invalid_argument("DimensionlessParams: all parameters must be finite");
    }
    if (!(gamma > 0.0)) throw std::invalid_argument("DimensionlessParams: gamma must be > 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("DimensionlessParams: kappa must be >= 0");
    if (!(tau > 0.0)) throw std::invalid_argument("DimensionlessParams: tau must be > 0");
  }
};

/// Closed range [qMin, qMax] of angular-momentum indices kept from the infinite lattice.
struct BasisWindow {
  std::int64_t qMin = 0;
  std::int64_t qMax = 0;

  BasisWindow() = default;
  BasisWindow(std::int64_t lo, std::int64_t hi) : qMin(lo), qMax(hi) {
    if (lo > hi) {
      throw std::invalid_argument("BasisWindow: qMin (" + std::to_string(lo) +
                                  ") exceeds qMax (" + std::to_string(hi) + ")");
    }
  }

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(qMax - qMin + 1); }
  [[nodiscard]] bool contains(std::int64_t q) const { return q >= qMin && q <= qMax; }
  [[nodiscard]] bool contains(const BasisWindow& other) const {
    return other.qMin >= qMin && other.qMax <= qMax;
  }
  /// Angular momentum of array slot i.
  [[nodiscard]] std::int64_t q(std::size_t i) const { return qMin + static_cast<std::int64_t>(i); }
  [[nodiscard]] std::size_t index(std::int64_t q) const { return static_cast<std::size_t>(q - qMin); }

  [[nodiscard]] std::string str() const {
    return std::to_string(qMin) + ":" + std::to_string(qMax);
  }

  friend bool operator==(const BasisWindow&, const BasisWindow&) = default;
};

enum class Theory { NR, REL, REL_APPROX };
enum class Method { DIRECT, FAST };
enum class MeanConvention { INTERVAL, CIRCULAR };

inline std::string_view to_string(Theory t) {
  switch (t) {
    case Theory::NR: return "nr";
    case Theory::REL: return "rel";
    case Theory::REL_APPROX: return "approx";
  }
  return "?";
}

inline std::string_view to_string(Method m) { return m == Method::DIRECT ? "direct" : "fast"; }

inline std::string_view to_string(MeanConvention c) {
  return c == MeanConvention::INTERVAL ? "interval" : "circular";
}

/// Raised when probability reaches the edge of the basis window.
class WindowExhausted : public std::runtime_error {
 public:
  WindowExhausted(std::size_t kick, double tailMass, BasisWindow window)
      : std::runtime_error(describe(kick, tailMass, window)),
        kick_(kick), tailMass_(tailMass), window_(window) {}

  [[nodiscard]] std::size_t kick() const { return kick_; }
  [[nodiscard]] double tailMass() const { return tailMass_; }
  [[nodiscard]] BasisWindow window() const { return window_; }

 private:
  static std::string describe(std::size_t kick, double tailMass, const BasisWindow& window) {
    std::ostringstream msg;
    msg << "basis window " << window.str() << " exhausted at kick " << kick << " (boundary mass "
        << tailMass << "); widen the window and rerun";
    return msg.str();
  }

  std::size_t kick_;
  double tailMass_;
  BasisWindow window_;
};

/// Raised when the fast and direct kick paths disagree in self-check mode.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qkr

#endif  // QKR_TYPES_HPP
