#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psr/atomic.hpp"
#include "psr/cavity.hpp"

namespace psr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kIoError = 3,
  kOracleRefused = 4,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Parses "start:stop:count" (inclusive, evenly spaced) or "a, b, c".
/// Throws CliError(kConfigError) for malformed or empty grids.
[[nodiscard]] std::vector<double> parse_grid(const std::string& text, const std::string& key);

/// Fully resolved run configuration. Every field has a value after loading,
/// so dump() is a complete, canonical description of the run.
struct RunConfig {
  std::optional<std::uint64_t> seed;

  AtomicParams atoms;
  double intensity_ratio = 10.0;
  std::optional<double> linewidth_ghz;

  CavityParams cavity;
  bool psi_optimal = true;
  double pump = 1.0;

  std::vector<double> epsilon_grid;
  std::vector<double> delta_grid;
  std::vector<double> eta_grid;
  int runs_per_point = 10;

  int num_events = 700;
  int max_lag = 50;
  double band_sigmas = 3.0;

  std::filesystem::path ising_instance;
  double kappa = 0.1;
  int restarts = 32;

  std::filesystem::path output_dir = ".";

  /// Small-signal gain of the configured medium.
  [[nodiscard]] double gl() const;
  [[nodiscard]] Medium medium() const;
  /// Cavity parameters with psi resolved ("optimal" becomes arctan(gl/2)).
  [[nodiscard]] CavityParams resolved_cavity() const;

  /// Sorted "section.key=value" lines, one per setting.
  [[nodiscard]] std::vector<std::string> dump() const;
  /// Lowercase hex SHA-256 of the joined dump() lines.
  [[nodiscard]] std::string sha256() const;
};

/// Reads an INI file (may be empty), applies "section.key=value" overrides
/// and validates the result. Unknown keys are rejected.
[[nodiscard]] RunConfig load_config(const std::optional<std::filesystem::path>& file,
                                    const std::vector<std::string>& overrides);

}  // namespace psr::cli
