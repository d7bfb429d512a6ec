#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "psr/atomic.hpp"
#include "psr/polarization.hpp"

namespace psr {

enum class NoiseMode {
  kInitialSeed,  ///< One complex Gaussian draw for E_V before the first pass.
  kPerPass,      ///< Initial draw plus fresh additive noise after every pass.
};

/// Polarization-selective ring resonator.
struct CavityParams {
  double eta = 0.9;  ///< Roundtrip intensity transmission.
  double psi = 0.0;  ///< Roundtrip phase (rad).
  double noise_sigma = 1e-6;
  int max_iters = 100000;
  double conv_tol = 1e-12;
  int conv_window = 10;
  NoiseMode noise_mode = NoiseMode::kInitialSeed;

  void validate() const;
};

/// The self-rotating vapor as seen by the cavity: atomic parameters plus
/// the pump intensity I/I_sat.
struct Medium {
  AtomicParams atoms;
  double intensity_ratio = 0.0;

  [[nodiscard]] double gl() const { return small_signal_gain(atoms, intensity_ratio); }
};

struct RunRecord {
  PolarizationState steady_state;
  int helicity = 0;  ///< sign(Im E_V); 0 when |Im E_V| < conv_tol.
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

/// E_V after one pass through the medium, before the PBS.
[[nodiscard]] std::complex<double> self_rotated_vertical(std::complex<double> e_v, double pump,
                                                         const Medium& medium);

/// One roundtrip: self-rotation at the current ellipticity of (pump, E_V),
/// projection on V, loss and phase sqrt(eta) e^{i psi}, then a fresh pump in H.
[[nodiscard]] PolarizationState roundtrip(const PolarizationState& state, double pump,
                                          const CavityParams& cav, const Medium& medium);

/// sqrt(eta) R(psi) [[1, gl], [0, 1]] acting on (Re E_V, Im E_V).
[[nodiscard]] Eigen::Matrix2d linear_transfer_matrix(double gl, const CavityParams& cav);

/// Roots of the characteristic polynomial of a real 2x2 matrix.
[[nodiscard]] std::array<std::complex<double>, 2> transfer_eigenvalues(const Eigen::Matrix2d& m);

[[nodiscard]] double spectral_radius(const Eigen::Matrix2d& m);

/// Closed-form oscillation threshold 1/sqrt(eta) - sqrt(eta).
[[nodiscard]] double threshold_gain(double eta);

struct ThresholdResult {
  bool above = false;
  double margin = 0.0;  ///< gl - (1/sqrt(eta) - sqrt(eta)).
};

/// Throws InvalidEta unless 0 < eta <= 1.
[[nodiscard]] ThresholdResult threshold_check(double gl, double eta);

/// max over psi of the spectral radius, found numerically: a uniform scan
/// of [0, pi) (the radius is pi-periodic in psi) refined by golden section
/// on |trace|, which orders the radii because det = eta for every psi.
[[nodiscard]] double scan_max_spectral_radius(double gl, double eta, int scan_points = 256);

/// psi* = arctan(gl / 2).
[[nodiscard]] double optimal_phase(double gl);

using Rng = std::mt19937_64;

/// Complex Gaussian with E|z|^2 = sigma^2 (each quadrature sigma/sqrt2).
[[nodiscard]] std::complex<double> complex_gaussian(Rng& rng, double sigma);

/// Iterates roundtrip from the given E_V until |dE_V| < conv_tol holds for
/// conv_window consecutive passes or max_iters is reached. The observer,
/// if set, sees E_V after every pass.
[[nodiscard]] RunRecord run_from(std::complex<double> initial_e_v, double pump,
                                 const CavityParams& cav, const Medium& medium,
                                 std::uint64_t seed = 0,
                                 const std::function<void(std::complex<double>)>& observer = {});

/// Seeds E_V from the noise model and iterates to steady state.
/// Deterministic in rng_seed.
[[nodiscard]] RunRecord run_to_steady_state(double pump, const CavityParams& cav,
                                            const Medium& medium, std::uint64_t rng_seed);

struct LossSweepRow {
  double eta = 0.0;
  double mean_re_ratio = 0.0;  ///< mean |Re E_V| / E_H.
  double mean_im_ratio = 0.0;  ///< mean |Im E_V| / E_H.
  bool above_threshold = false;
  int runs = 0;
  int not_converged = 0;
};

/// Steady-state quadratures versus roundtrip transmission.
///
/// Run r at grid point j uses seed rng_seed + j * runs_per_point + r.
/// Quadratures are read back through decompose and
/// quadratures_from_intensities, as a polarimeter would.
[[nodiscard]] std::vector<LossSweepRow> sweep_loss(double pump, const Medium& medium, double psi,
                                                   std::span<const double> eta_grid,
                                                   int runs_per_point, std::uint64_t rng_seed,
                                                   const CavityParams& base = {});

}  // namespace psr
