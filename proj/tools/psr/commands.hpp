#pragma once

#include <filesystem>
#include <vector>

#include "config.hpp"

namespace psr::cli {

/// Each command writes its CSV files under cfg.output_dir and returns their
/// paths. Failures are reported as CliError.

/// psr_curve.csv: (epsilon, phi) over sweep.epsilon.
std::vector<std::filesystem::path> cmd_psr_curve(const RunConfig& cfg);

/// spectrum.csv: (delta, gl, absorption, transmission, alpha_l[, detuning_ghz])
/// over sweep.delta, for a linearly polarized beam of medium.intensity_ratio.
std::vector<std::filesystem::path> cmd_spectrum(const RunConfig& cfg);

/// bistability_events.csv, bistability_summary.csv and
/// bistability_autocorrelation.csv for montecarlo.num_events runs.
std::vector<std::filesystem::path> cmd_bistability(const RunConfig& cfg);

/// loss_sweep.csv over sweep.eta.
std::vector<std::filesystem::path> cmd_loss_sweep(const RunConfig& cfg);

/// ising_restarts.csv and ising_report.csv. With oracle set, instances
/// larger than the enumeration limit are refused (kOracleRefused).
std::vector<std::filesystem::path> cmd_ising(const RunConfig& cfg, bool oracle);

}  // namespace psr::cli
