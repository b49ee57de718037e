#ifndef QKR_CLI_HPP
#define QKR_CLI_HPP

#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qkr/experiment.hpp"

namespace qkr {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2 };

/// Command-line front end. Precedence: defaults < --preset < --config file < flags.
inline int cliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paired non-relativistic / relativistic kicked-rotor simulation"};
  app.name(argc > 0 ? argv[0] : "kicked_rotor");

  // Values are kept as text and applied through applyConfigValue so the
  // command line and config files share one parser.
  const std::vector<std::pair<std::string, std::string>> valueOptions{
      {"gamma", "hbar / (m0 c R)"},
      {"kappa", "kick strength e V T / hbar"},
      {"tau", "hbar T / (m0 R^2)"},
      {"sigma0", "initial packet width"},
      {"theta0", "initial mean angle in [0, 2pi) ('pi' accepted)"},
      {"nbar", "initial mean angular momentum"},
      {"kicks", "number of kicks to simulate"},
      {"snapshots", "comma-separated kicks at which densities are dumped"},
      {"grid", "density grid size (power of two >= 256)"},
      {"method", "kick engine: fast or direct"},
      {"window", "explicit basis window qmin:qmax"},
      {"tail", "initial tail mass allowed outside the automatic window"},
      {"boundary-threshold", "edge-band mass that aborts a run"},
      {"kernel-tol", "squared Bessel mass allowed outside the kick band"},
      {"mean-convention", "interval or circular"},
      {"out", "output directory"}};
  std::vector<std::string> values(valueOptions.size());
  std::vector<CLI::Option*> handles;
  for (std::size_t i = 0; i < valueOptions.size(); ++i) {
    handles.push_back(app.add_option("--" + valueOptions[i].first, values[i], valueOptions[i].second));
  }
  bool includeApprox = false;
  bool selfCheck = false;
  std::string preset;
  std::string configFile;
  auto* approxFlag = app.add_flag("--include-approx", includeApprox,
                                  "also run the approximate relativistic map");
  auto* selfCheckFlag = app.add_flag("--self-check", selfCheck,
                                     "cross-check every fast kick against the direct sum");
  app.add_option("--preset", preset, "named configuration (paper)");
  app.add_option("--config", configFile, "key = value configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  ExperimentConfig config;
  RunResult result;
  try {
    if (!preset.empty()) {
      if (preset != "paper") throw std::invalid_argument("unknown preset '" + preset + "'");
      config = paperPreset();
    }
    if (!configFile.empty()) applyConfigFile(config, configFile);
    for (std::size_t i = 0; i < valueOptions.size(); ++i) {
      if (handles[i]->count() > 0) applyConfigValue(config, valueOptions[i].first, values[i]);
    }
    if (approxFlag->count() > 0) config.includeApprox = includeApprox;
    if (selfCheckFlag->count() > 0) config.selfCheck = selfCheck;
    config.validate();
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    result = runExperiment(config);
  } catch (const WindowExhausted& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConsistencyError& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    // invalid_argument from state construction, runtime_error from an unreachable kernel band
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    writeOutputs(result, config.outputDir);
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitConfig;
  }

  const ObservableRecord& last = result.records.back();
  out << "window " << result.window.str() << " (" << result.window.size() << " modes), kick band "
      << result.kernelBandwidth << '\n'
      << "kicks " << config.kicks << ", wall clock " << std::fixed << std::setprecision(3)
      << result.wallClockSeconds << " s\n"
      << std::setprecision(4) << "final rel. difference: mean " << last.relDiffMeanPct
      << " %, std " << last.relDiffStdPct << " %\n"
      << std::scientific << std::setprecision(2) << "max norm drift " << result.maxNormDrift
      << ", max boundary mass " << result.maxBoundaryTailMass << '\n'
      << "wrote " << (std::filesystem::path(config.outputDir) / "series.csv").string() << '\n';
  return kExitOk;
}

}  // namespace qkr

#endif  // QKR_CLI_HPP
