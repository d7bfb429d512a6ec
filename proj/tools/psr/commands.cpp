#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "csv.hpp"
#include "psr/errors.hpp"
#include "psr/ising.hpp"
#include "psr/parallel.hpp"
#include "psr/polarization.hpp"
#include "psr/stats.hpp"

namespace psr::cli {
namespace {

std::uint64_t require_seed(const RunConfig& cfg, const std::string& command) {
  if (!cfg.seed) throw CliError(kConfigError, command + ": run.seed is required");
  return *cfg.seed;
}

std::string join_spins(const SpinConfiguration& config) {
  std::string out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out += ' ';
    out += config.spins[i] > 0 ? "+1" : "-1";
  }
  return out;
}

Row quantity(const std::string& name, std::string value) { return {name, std::move(value)}; }

}  // namespace

std::vector<std::filesystem::path> cmd_psr_curve(const RunConfig& cfg) {
  std::vector<Row> rows;
  rows.reserve(cfg.epsilon_grid.size());
  for (const double eps : cfg.epsilon_grid)
    rows.push_back({cell(eps), cell(self_rotation_angle(cfg.atoms, cfg.intensity_ratio, eps))});
  const auto path = cfg.output_dir / "psr_curve.csv";
  write_csv(path, "psr-curve", cfg, {"epsilon", "phi"}, rows);
  return {path};
}

std::vector<std::filesystem::path> cmd_spectrum(const RunConfig& cfg) {
  if (!(cfg.intensity_ratio > 0.0))
    throw CliError(kConfigError, "spectrum: medium.intensity_ratio must be > 0");

  const std::size_t n = cfg.delta_grid.size();
  std::vector<double> gl(n), absorption(n);
  for (std::size_t k = 0; k < n; ++k) {
    AtomicParams atoms = cfg.atoms;
    atoms.detuning = cfg.delta_grid[k] * atoms.linewidth();
    gl[k] = small_signal_gain(atoms, cfg.intensity_ratio);
    const DriveField linear = drive_from_intensities(atoms, cfg.intensity_ratio / 2, cfg.intensity_ratio / 2);
    absorption[k] = optical_response(atoms, linear).absorption;
  }
  // alpha_l = ln(I_max / I) with I = exp(-absorption) the transmitted intensity.
  const double least = *std::min_element(absorption.begin(), absorption.end());

  Row header{"delta", "gl", "absorption", "transmission", "alpha_l"};
  if (cfg.linewidth_ghz) header.emplace_back("detuning_ghz");
  std::vector<Row> rows;
  for (std::size_t k = 0; k < n; ++k) {
    Row row{cell(cfg.delta_grid[k]), cell(gl[k]), cell(absorption[k]), cell(std::exp(-absorption[k])),
            cell(absorption[k] - least)};
    if (cfg.linewidth_ghz) row.push_back(cell(cfg.delta_grid[k] * *cfg.linewidth_ghz));
    rows.push_back(std::move(row));
  }
  const auto path = cfg.output_dir / "spectrum.csv";
  write_csv(path, "spectrum", cfg, header, rows);
  return {path};
}

std::vector<std::filesystem::path> cmd_bistability(const RunConfig& cfg) {
  const std::uint64_t base_seed = require_seed(cfg, "bistability");
  const Medium medium = cfg.medium();
  const CavityParams cav = cfg.resolved_cavity();

  std::vector<RunRecord> records(static_cast<std::size_t>(cfg.num_events));
  parallel_for(records.size(), [&](std::size_t e) {
    records[e] = run_to_steady_state(cfg.pump, cav, medium, base_seed + e);
  });

  std::vector<Row> events;
  std::vector<int> helicities;
  long long not_converged = 0;
  for (std::size_t e = 0; e < records.size(); ++e) {
    const RunRecord& rec = records[e];
    const QuadratureRatios q = quadratures_from_intensities(decompose(rec.steady_state));
    events.push_back({cell(static_cast<long long>(e)), std::to_string(rec.seed), cell(static_cast<long long>(rec.helicity)),
                      cell(static_cast<long long>(rec.iterations)), cell(rec.converged), cell(q.re_ratio),
                      cell(q.im_ratio)});
    helicities.push_back(rec.helicity);
    if (!rec.converged) ++not_converged;
  }

  const FilteredHelicities filtered = filter_helicities(helicities);
  const std::size_t m = filtered.sequence.size();
  const bool no_oscillation = m == 0;
  const double band = bernoulli_band(std::max<std::size_t>(m, 1), cfg.band_sigmas);

  std::vector<Row> correlation;
  std::size_t outside = 0;
  std::size_t max_lag_used = 0;
  if (m > 0) {
    max_lag_used = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_lag), m - 1);
    const auto k = autocorrelation(filtered.sequence, max_lag_used);
    outside = count_outside_band(k, band);
    for (std::size_t lag = 0; lag < k.size(); ++lag)
      correlation.push_back({cell(static_cast<long long>(lag)), cell(k[lag]), cell(-band), cell(band),
                             cell(lag == 0 || std::abs(k[lag]) <= band)});
  }

  const double threshold = cav.eta > 0.0 ? threshold_gain(cav.eta) : INFINITY;
  std::vector<Row> summary{
      quantity("events", cell(static_cast<long long>(records.size()))),
      quantity("oscillating", cell(static_cast<long long>(m))),
      quantity("zero_helicity", cell(static_cast<long long>(filtered.zero_count))),
      quantity("not_converged", cell(not_converged)),
      quantity("no_oscillation", cell(no_oscillation)),
      quantity("gl", cell(cfg.gl())),
      quantity("threshold_gl", cell(threshold)),
      quantity("above_threshold", cell(cav.eta > 0.0 && cfg.gl() > threshold)),
      quantity("bias", cell(no_oscillation ? std::nan("") : bias(filtered.sequence))),
      quantity("band_sigmas", cell(cfg.band_sigmas)),
      quantity("band_half_width", cell(no_oscillation ? std::nan("") : band)),
      quantity("max_lag", cell(static_cast<long long>(max_lag_used))),
      quantity("lags_outside_band", cell(static_cast<long long>(outside))),
  };

  const auto events_path = cfg.output_dir / "bistability_events.csv";
  const auto summary_path = cfg.output_dir / "bistability_summary.csv";
  const auto correlation_path = cfg.output_dir / "bistability_autocorrelation.csv";
  write_csv(events_path, "bistability", cfg,
            {"event", "seed", "helicity", "iterations", "converged", "re_ratio", "im_ratio"}, events);
  write_csv(summary_path, "bistability", cfg, {"quantity", "value"}, summary);
  write_csv(correlation_path, "bistability", cfg, {"lag", "k", "band_low", "band_high", "inside"}, correlation);
  return {events_path, summary_path, correlation_path};
}

std::vector<std::filesystem::path> cmd_loss_sweep(const RunConfig& cfg) {
  const std::uint64_t seed = require_seed(cfg, "loss-sweep");
  const CavityParams cav = cfg.resolved_cavity();
  const auto table = sweep_loss(cfg.pump, cfg.medium(), cav.psi, cfg.eta_grid, cfg.runs_per_point, seed, cav);
  std::vector<Row> rows;
  for (const LossSweepRow& row : table)
    rows.push_back({cell(row.eta), cell(row.mean_re_ratio), cell(row.mean_im_ratio), cell(row.above_threshold),
                    cell(static_cast<long long>(row.runs)), cell(static_cast<long long>(row.not_converged))});
  const auto path = cfg.output_dir / "loss_sweep.csv";
  write_csv(path, "loss-sweep", cfg,
            {"eta", "mean_abs_re_ratio", "mean_abs_im_ratio", "above_threshold", "runs", "not_converged"}, rows);
  return {path};
}

std::vector<std::filesystem::path> cmd_ising(const RunConfig& cfg, bool oracle) {
  const std::uint64_t seed = require_seed(cfg, "ising");
  if (cfg.ising_instance.empty()) throw CliError(kConfigError, "ising: ising.instance is required");
  if (!std::filesystem::is_regular_file(cfg.ising_instance))
    throw CliError(kConfigError, "ising: instance '" + cfg.ising_instance.string() + "' not found");
  std::ifstream in(cfg.ising_instance);
  if (!in) throw CliError(kIoError, "ising: cannot read '" + cfg.ising_instance.string() + "'");

  IsingProblem problem;
  try {
    problem = read_instance(in);
    problem.kappa = cfg.kappa;
    problem.validate();
  } catch (const psr::Error& e) {
    throw CliError(kConfigError, std::string("ising: ") + e.what());
  }
  if (oracle && problem.size() > kMaxEnumerationSize)
    throw CliError(kOracleRefused, "ising: --oracle refuses N = " + std::to_string(problem.size()) +
                                       " (limit " + std::to_string(kMaxEnumerationSize) + ")");

  const SolveResult result = solve(problem, cfg.pump, cfg.resolved_cavity(), cfg.medium(), cfg.restarts, seed);

  std::vector<Row> restarts;
  for (std::size_t r = 0; r < result.restarts.size(); ++r) {
    const RestartRecord& rec = result.restarts[r];
    restarts.push_back({cell(static_cast<long long>(r)), std::to_string(rec.seed), cell(rec.energy),
                        cell(static_cast<long long>(rec.iterations)), cell(rec.converged),
                        cell(static_cast<long long>(rec.undecided_modes)), join_spins(rec.spins)});
  }
  std::vector<Row> report{
      quantity("n", cell(static_cast<long long>(problem.size()))),
      quantity("restarts", cell(static_cast<long long>(result.restarts.size()))),
      quantity("best_energy", cell(result.best_energy)),
      quantity("best_spins", join_spins(result.best)),
  };
  if (oracle) {
    const GroundState ground = brute_force_ground_state(problem);
    const double tol = 1e-9 * (1.0 + problem.j.cwiseAbs().sum());
    report.push_back(quantity("oracle_energy", cell(ground.energy)));
    report.push_back(quantity("oracle_spins", join_spins(ground.config)));
    report.push_back(quantity("match", cell(std::abs(result.best_energy - ground.energy) <= tol)));
  }

  const auto restarts_path = cfg.output_dir / "ising_restarts.csv";
  const auto report_path = cfg.output_dir / "ising_report.csv";
  write_csv(restarts_path, "ising", cfg,
            {"restart", "seed", "energy", "iterations", "converged", "undecided_modes", "spins"}, restarts);
  write_csv(report_path, "ising", cfg, {"quantity", "value"}, report);
  return {restarts_path, report_path};
}

}  // namespace psr::cli
