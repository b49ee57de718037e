#ifndef QKR_EXPERIMENT_HPP
#define QKR_EXPERIMENT_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkr/observables.hpp"
#include "qkr/propagators.hpp"
#include "qkr/state.hpp"
#include "qkr/types.hpp"

#ifndef QKR_VERSION
#define QKR_VERSION "0.1.0-unknown"
#endif

namespace qkr {

struct ExperimentConfig {
  DimensionlessParams params{2e-7, 1e-7, 1e6};
  double sigma0 = 0.8;
  double theta0 = std::numbers::pi;
  std::int64_t nbar = 48;
  std::int64_t kicks = 509;
  std::vector<std::int64_t> snapshotKicks;
  std::size_t gridSize = kDefaultGridSize;
  Method method = Method::FAST;
  bool includeApprox = false;
  std::optional<BasisWindow> windowOverride;
  double tailThreshold = 1e-20;
  double boundaryThreshold = kDefaultBoundaryThreshold;
  double kernelTolerance = kDefaultKernelTolerance;
  bool selfCheck = false;
  std::string outputDir = "results";
  MeanConvention meanConvention = MeanConvention::INTERVAL;

  void validate() const {
    params.validate();
    if (kicks < 0) throw std::invalid_argument("kicks must be >= 0");
    for (std::int64_t k : snapshotKicks) {
      if (k < 0 || k > kicks) {
        throw std::invalid_argument("snapshot kick " + std::to_string(k) + " is outside [0, " +
                                    std::to_string(kicks) + "]");
      }
    }
    if (gridSize < 256 || (gridSize & (gridSize - 1)) != 0) {
      throw std::invalid_argument("grid size must be a power of two >= 256");
    }
    if (!std::isfinite(sigma0) || !(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be > 0");
    if (!std::isfinite(theta0) || theta0 < 0.0 || theta0 >= 2.0 * std::numbers::pi) {
      throw std::invalid_argument("theta0 must lie in [0, 2 pi)");
    }
    if (!(tailThreshold > 0.0 && tailThreshold < 1.0)) {
      throw std::invalid_argument("tail threshold must lie in (0, 1)");
    }
    if (!(boundaryThreshold > 0.0)) throw std::invalid_argument("boundary threshold must be > 0");
    if (!(kernelTolerance > 0.0 && kernelTolerance < 1.0)) {
      throw std::invalid_argument("kernel tolerance must lie in (0, 1)");
    }
  }
};

/// gamma = 2e-7, kappa = 1e-7, tau = 1e6, sigma0 = 0.8, theta0 = pi, nbar = 48,
/// 509 kicks, density snapshots at kicks 52 and 509.
inline ExperimentConfig paperPreset() {
  ExperimentConfig config;
  config.snapshotKicks = {52, 509};
  return config;
}

/// Observables at one kick index (state just before that kick; 0 is the initial state).
struct ObservableRecord {
  std::int64_t kick = 0;
  double meanNR = 0.0;
  double meanREL = 0.0;
  double stdNR = 0.0;
  double stdREL = 0.0;
  double relDiffMeanPct = 0.0;
  double relDiffStdPct = 0.0;
  double normNR = 0.0;
  double normREL = 0.0;
  double overlap = 0.0;
  // Present only when the approximate-relativistic trajectory is run.
  double meanApprox = std::numeric_limits<double>::quiet_NaN();
  double stdApprox = std::numeric_limits<double>::quiet_NaN();
  double relDiffApproxVsRelPct = std::numeric_limits<double>::quiet_NaN();
};

struct Snapshot {
  AngularDensity nr;
  AngularDensity rel;
  std::optional<AngularDensity> approx;
  SpectralState stateNR;
  SpectralState stateREL;
  std::optional<SpectralState> stateApprox;
};

struct RunResult {
  ExperimentConfig config;
  BasisWindow window;
  std::int64_t kernelBandwidth = 0;
  std::vector<ObservableRecord> records;
  std::map<std::int64_t, Snapshot> snapshots;
  std::vector<double> boundaryMassNR;
  std::vector<double> boundaryMassREL;
  double maxBoundaryTailMass = 0.0;
  double maxNormDrift = 0.0;
  std::size_t varianceClips = 0;
  std::size_t windowWidenings = 0;
  double wallClockSeconds = 0.0;
};

namespace detail {

struct Trajectory {
  std::vector<SpectralState> states;  // one per kick index
  std::vector<AngularMoments> moments;
  std::map<std::int64_t, AngularDensity> snapshots;
  std::size_t varianceClips = 0;
};

inline Trajectory runTrajectory(const ExperimentConfig& config, const BasisWindow& window,
                                Theory theory) {
  PlanOptions options;
  options.method = config.method;
  options.kernelTolerance = config.kernelTolerance;
  options.boundaryTailThreshold = config.boundaryThreshold;
  options.selfCheck = config.selfCheck;
  const StepPlan plan = makePlan(config.params, window, theory, options);
  const std::set<std::int64_t> snapshotSet(config.snapshotKicks.begin(), config.snapshotKicks.end());

  Trajectory out;
  out.states.reserve(static_cast<std::size_t>(config.kicks) + 1);
  out.moments.reserve(static_cast<std::size_t>(config.kicks) + 1);
  SpectralState state = initialState(config.sigma0, config.theta0, config.nbar, window, theory);
  for (std::int64_t n = 0;; ++n) {
    const AngularDensity density = theory == Theory::REL
                                       ? densityREL(state, *plan.weights, config.gridSize)
                                       : densityNR(state, config.gridSize);
    const AngularMoments moments = angularMoments(density, config.meanConvention);
    if (moments.varianceClipped) ++out.varianceClips;
    out.moments.push_back(moments);
    if (snapshotSet.contains(n)) out.snapshots.emplace(n, density);
    out.states.push_back(state);
    if (n == config.kicks) break;
    state = step(state, plan);
  }
  return out;
}

inline BasisWindow defaultWindow(const ExperimentConfig& config) {
  const BasisWindow automatic =
      autoWindow(config.params, config.sigma0, config.nbar, static_cast<std::size_t>(config.kicks),
                 config.tailThreshold, config.kernelTolerance);
  const std::int64_t half = initialHalfWidth(config.sigma0);
  return {std::min(automatic.qMin, config.nbar - half), std::max(automatic.qMax, config.nbar + half)};
}

inline RunResult runOnWindow(const ExperimentConfig& config, const BasisWindow& window) {
  auto nrFuture = std::async(std::launch::async, runTrajectory, std::cref(config), window, Theory::NR);
  auto relFuture = std::async(std::launch::async, runTrajectory, std::cref(config), window, Theory::REL);
  std::optional<std::future<Trajectory>> approxFuture;
  if (config.includeApprox) {
    approxFuture = std::async(std::launch::async, runTrajectory, std::cref(config), window,
                              Theory::REL_APPROX);
  }
  // Collect every future before rethrowing so no worker outlives this frame.
  std::exception_ptr failure;
  auto collect = [&failure](std::future<Trajectory>& f) -> std::optional<Trajectory> {
    try {
      return f.get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
      return std::nullopt;
    }
  };
  auto nr = collect(nrFuture);
  auto rel = collect(relFuture);
  std::optional<Trajectory> approx;
  if (approxFuture) approx = collect(*approxFuture);
  if (failure) std::rethrow_exception(failure);

  RunResult result;
  result.config = config;
  result.window = window;
  result.kernelBandwidth = buildKernel(config.params.kappa, config.kernelTolerance).bandwidth;
  result.varianceClips = nr->varianceClips + rel->varianceClips + (approx ? approx->varianceClips : 0);

  const auto count = static_cast<std::size_t>(config.kicks) + 1;
  result.records.resize(count);
  result.boundaryMassNR.resize(count);
  result.boundaryMassREL.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    ObservableRecord& r = result.records[n];
    const SpectralState& a = nr->states[n];
    const SpectralState& b = rel->states[n];
    r.kick = static_cast<std::int64_t>(n);
    r.meanNR = nr->moments[n].mean;
    r.meanREL = rel->moments[n].mean;
    r.stdNR = nr->moments[n].stddev;
    r.stdREL = rel->moments[n].stddev;
    r.relDiffMeanPct = relDiffPct(r.meanREL, r.meanNR);
    r.relDiffStdPct = relDiffPct(r.stdREL, r.stdNR);
    r.normNR = a.norm();
    r.normREL = b.norm();
    r.overlap = qkr::overlap(a, b);
    if (approx) {
      r.meanApprox = approx->moments[n].mean;
      r.stdApprox = approx->moments[n].stddev;
      r.relDiffApproxVsRelPct = relDiffPct(r.meanREL, r.meanApprox);
    }
    result.boundaryMassNR[n] = a.boundaryMass;
    result.boundaryMassREL[n] = b.boundaryMass;
    result.maxBoundaryTailMass =
        std::max({result.maxBoundaryTailMass, a.boundaryMass, b.boundaryMass});
    result.maxNormDrift =
        std::max({result.maxNormDrift, std::abs(r.normNR - 1.0), std::abs(r.normREL - 1.0)});
  }

  for (const auto& [kick, densityNr] : nr->snapshots) {
    const auto n = static_cast<std::size_t>(kick);
    Snapshot snap{densityNr, rel->snapshots.at(kick), std::nullopt, nr->states[n], rel->states[n],
                  std::nullopt};
    if (approx) {
      snap.approx = approx->snapshots.at(kick);
      snap.stateApprox = approx->states[n];
    }
    result.snapshots.emplace(kick, std::move(snap));
  }
  return result;
}

}  // namespace detail

inline constexpr std::size_t kMaxWindowWidenings = 4;

/// Evolves the NR and REL trajectories (and optionally REL_APPROX) from the
/// shared Gaussian coefficients and records observables at every kick index.
/// With an automatic window, boundary exhaustion doubles the window and
/// restarts; with an explicit window it propagates as WindowExhausted.
inline RunResult runExperiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  BasisWindow window = config.windowOverride ? *config.windowOverride : detail::defaultWindow(config);
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      RunResult result = detail::runOnWindow(config, window);
      result.windowWidenings = attempt;
      result.wallClockSeconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return result;
    } catch (const WindowExhausted&) {
      if (config.windowOverride || attempt == kMaxWindowWidenings) throw;
      const std::int64_t half = 2 * std::max(config.nbar - window.qMin, window.qMax - config.nbar);
      window = {config.nbar - half, config.nbar + half};
    }
  }
}

// ---------------------------------------------------------------------------
// Output formats

inline const std::vector<std::string>& csvColumns() {
  static const std::vector<std::string> columns{
      "kick",       "mean_nr",  "mean_rel", "std_nr",  "std_rel", "rel_diff_mean_pct",
      "rel_diff_std_pct", "norm_nr", "norm_rel", "overlap"};
  return columns;
}

inline const std::vector<std::string>& csvApproxColumns() {
  static const std::vector<std::string> columns{"mean_approx", "std_approx",
                                                "rel_diff_approx_vs_rel_pct"};
  return columns;
}

/// 17 significant digits (round-trips exactly); NaN becomes an empty field.
inline std::string formatDouble(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return {buf, res.ptr};
}

inline double parseDouble(std::string_view text) {
  if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

namespace detail {

inline std::ofstream openForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finishWrite(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline std::vector<std::string_view> splitCsvLine(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t comma = line.find(',', begin);
    fields.push_back(line.substr(begin, comma == std::string_view::npos ? comma : comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

}  // namespace detail

inline void writeCsv(const RunResult& result, const std::filesystem::path& path) {
  auto out = detail::openForWrite(path);
  const bool approx = result.config.includeApprox;
  std::string header;
  for (const auto& c : csvColumns()) header += (header.empty() ? "" : ",") + c;
  if (approx) {
    for (const auto& c : csvApproxColumns()) header += "," + c;
  }
  out << header << '\n';
  for (const ObservableRecord& r : result.records) {
    out << r.kick << ',' << formatDouble(r.meanNR) << ',' << formatDouble(r.meanREL) << ','
        << formatDouble(r.stdNR) << ',' << formatDouble(r.stdREL) << ','
        << formatDouble(r.relDiffMeanPct) << ',' << formatDouble(r.relDiffStdPct) << ','
        << formatDouble(r.normNR) << ',' << formatDouble(r.normREL) << ','
        << formatDouble(r.overlap);
    if (approx) {
      out << ',' << formatDouble(r.meanApprox) << ',' << formatDouble(r.stdApprox) << ','
          << formatDouble(r.relDiffApproxVsRelPct);
    }
    out << '\n';
  }
  detail::finishWrite(out, path);
}

/// Parses a series file written by writeCsv. Columns are matched by name.
inline std::vector<ObservableRecord> readCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");

  std::map<std::string, std::size_t, std::less<>> column;
  const auto names = detail::splitCsvLine(line);
  for (std::size_t i = 0; i < names.size(); ++i) column.emplace(std::string(names[i]), i);
  for (const auto& c : csvColumns()) {
    if (!column.contains(c)) {
      throw std::runtime_error("'" + path.string() + "' lacks column '" + c + "'");
    }
  }

  std::vector<ObservableRecord> records;
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    const auto fields = detail::splitCsvLine(line);
    if (fields.size() != names.size()) {
      throw std::runtime_error("'" + path.string() + "' line " + std::to_string(lineNo) +
                               ": expected " + std::to_string(names.size()) + " fields");
    }
    auto get = [&](std::string_view name) {
      const auto it = column.find(name);
      return it == column.end() ? std::numeric_limits<double>::quiet_NaN()
                                : parseDouble(fields[it->second]);
    };
    ObservableRecord r;
    r.kick = static_cast<std::int64_t>(get("kick"));
    r.meanNR = get("mean_nr");
    r.meanREL = get("mean_rel");
    r.stdNR = get("std_nr");
    r.stdREL = get("std_rel");
    r.relDiffMeanPct = get("rel_diff_mean_pct");
    r.relDiffStdPct = get("rel_diff_std_pct");
    r.normNR = get("norm_nr");
    r.normREL = get("norm_rel");
    r.overlap = get("overlap");
    r.meanApprox = get("mean_approx");
    r.stdApprox = get("std_approx");
    r.relDiffApproxVsRelPct = get("rel_diff_approx_vs_rel_pct");
    records.push_back(r);
  }
  return records;
}

/// Two columns: phi,rho.
inline void writeDensityCsv(const AngularDensity& density, const std::filesystem::path& path) {
  auto out = detail::openForWrite(path);
  out << "phi,rho\n";
  for (std::size_t j = 0; j < density.gridSize; ++j) {
    out << formatDouble(density.angle(j)) << ',' << formatDouble(density.values[j]) << '\n';
  }
  detail::finishWrite(out, path);
}

inline std::string densityFileName(Theory theory, std::int64_t kick) {
  return "density_" + std::string(to_string(theory)) + "_kick" + std::to_string(kick) + ".csv";
}

inline nlohmann::json configToJson(const ExperimentConfig& c) {
  nlohmann::json j;
  j["gamma"] = c.params.gamma;
  j["kappa"] = c.params.kappa;
  j["tau"] = c.params.tau;
  j["sigma0"] = c.sigma0;
  j["theta0"] = c.theta0;
  j["nbar"] = c.nbar;
  j["kicks"] = c.kicks;
  j["snapshots"] = c.snapshotKicks;
  j["grid"] = c.gridSize;
  j["method"] = std::string(to_string(c.method));
  j["includeApprox"] = c.includeApprox;
  if (c.windowOverride) {
    j["window"] = {{"qMin", c.windowOverride->qMin}, {"qMax", c.windowOverride->qMax}};
  } else {
    j["window"] = nullptr;
  }
  j["tail"] = c.tailThreshold;
  j["boundaryThreshold"] = c.boundaryThreshold;
  j["kernelTolerance"] = c.kernelTolerance;
  j["selfCheck"] = c.selfCheck;
  j["meanConvention"] = std::string(to_string(c.meanConvention));
  j["outputDir"] = c.outputDir;
  return j;
}

inline nlohmann::json sidecarJson(const RunResult& result) {
  nlohmann::json j;
  j["version"] = QKR_VERSION;
  j["config"] = configToJson(result.config);
  j["windowUsed"] = {{"qMin", result.window.qMin}, {"qMax", result.window.qMax}};
  j["kernelBandwidth"] = result.kernelBandwidth;
  j["maxBoundaryTailMass"] = result.maxBoundaryTailMass;
  j["maxNormDrift"] = result.maxNormDrift;
  j["varianceClips"] = result.varianceClips;
  j["windowWidenings"] = result.windowWidenings;
  j["wallClockSeconds"] = result.wallClockSeconds;
  return j;
}

/// series.csv, run.json and one density file per snapshot kick and theory.
inline void writeOutputs(const RunResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  writeCsv(result, dir / "series.csv");
  for (const auto& [kick, snap] : result.snapshots) {
    writeDensityCsv(snap.nr, dir / densityFileName(Theory::NR, kick));
    writeDensityCsv(snap.rel, dir / densityFileName(Theory::REL, kick));
    if (snap.approx) writeDensityCsv(*snap.approx, dir / densityFileName(Theory::REL_APPROX, kick));
  }
  const auto jsonPath = dir / "run.json";
  auto out = detail::openForWrite(jsonPath);
  out << sidecarJson(result).dump(2) << '\n';
  detail::finishWrite(out, jsonPath);
}

// ---------------------------------------------------------------------------
// key = value configuration

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parseReal(std::string_view key, std::string_view text) {
  if (text == "pi") return std::numbers::pi;
  try {
    const double v = parseDouble(text);
    if (std::isnan(v)) throw std::invalid_argument("empty");
    return v;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(key) + ": expected a real number, got '" +
                                std::string(text) + "'");
  }
}

inline std::int64_t parseInteger(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(key) + ": expected an integer, got '" +
                                std::string(text) + "'");
  }
  return v;
}

inline bool parseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument(std::string(key) + ": expected true/false, got '" +
                              std::string(text) + "'");
}

}  // namespace detail

/// Applies one setting; keys are the long command-line option names without dashes.
inline void applyConfigValue(ExperimentConfig& c, std::string_view key, std::string_view rawValue) {
  using namespace detail;
  const std::string_view value = trim(rawValue);
  if (key == "gamma") {
    c.params.gamma = parseReal(key, value);
  } else if (key == "kappa") {
    c.params.kappa = parseReal(key, value);
  } else if (key == "tau") {
    c.params.tau = parseReal(key, value);
  } else if (key == "sigma0") {
    c.sigma0 = parseReal(key, value);
  } else if (key == "theta0") {
    c.theta0 = parseReal(key, value);
  } else if (key == "nbar") {
    c.nbar = parseInteger(key, value);
  } else if (key == "kicks") {
    c.kicks = parseInteger(key, value);
    if (c.kicks < 0) throw std::invalid_argument("kicks must be >= 0, got " + std::string(value));
  } else if (key == "snapshots") {
    c.snapshotKicks.clear();
    if (!value.empty()) {
      for (auto field : splitCsvLine(value)) c.snapshotKicks.push_back(parseInteger(key, trim(field)));
    }
  } else if (key == "grid") {
    const auto g = parseInteger(key, value);
    if (g <= 0) throw std::invalid_argument("grid must be positive");
    c.gridSize = static_cast<std::size_t>(g);
  } else if (key == "method") {
    if (value == "direct") c.method = Method::DIRECT;
    else if (value == "fast") c.method = Method::FAST;
    else throw std::invalid_argument("method: expected direct or fast, got '" + std::string(value) + "'");
  } else if (key == "include-approx") {
    c.includeApprox = parseBool(key, value);
  } else if (key == "window") {
    const auto colon = value.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("window: expected qmin:qmax, got '" + std::string(value) + "'");
    }
    c.windowOverride = BasisWindow{parseInteger(key, trim(value.substr(0, colon))),
                                   parseInteger(key, trim(value.substr(colon + 1)))};
  } else if (key == "tail") {
    c.tailThreshold = parseReal(key, value);
  } else if (key == "boundary-threshold") {
    c.boundaryThreshold = parseReal(key, value);
  } else if (key == "kernel-tol") {
    c.kernelTolerance = parseReal(key, value);
  } else if (key == "self-check") {
    c.selfCheck = parseBool(key, value);
  } else if (key == "mean-convention") {
    if (value == "interval") c.meanConvention = MeanConvention::INTERVAL;
    else if (value == "circular") c.meanConvention = MeanConvention::CIRCULAR;
    else throw std::invalid_argument("mean-convention: expected interval or circular");
  } else if (key == "out") {
    c.outputDir = std::string(value);
  } else {
    throw std::invalid_argument("unknown configuration key '" + std::string(key) + "'");
  }
}

/// `key = value` lines; `#` starts a comment.
inline std::vector<std::pair<std::string, std::string>> parseConfigText(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t lineNo = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string_view view = line;
    view = detail::trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineNo) + ": expected key = value");
    }
    entries.emplace_back(std::string(detail::trim(view.substr(0, eq))),
                         std::string(detail::trim(view.substr(eq + 1))));
  }
  return entries;
}

inline void applyConfigFile(ExperimentConfig& c, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  for (const auto& [key, value] : parseConfigText(text.str())) applyConfigValue(c, key, value);
}

}  // namespace qkr

#endif  // QKR_EXPERIMENT_HPP
