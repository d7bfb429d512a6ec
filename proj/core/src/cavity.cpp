#include "psr/cavity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "psr/errors.hpp"
#include "psr/parallel.hpp"

namespace psr {
namespace {

using cd = std::complex<double>;

double golden_section_argmax(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

int sign_with_deadband(double value, double deadband) {
  if (std::abs(value) < deadband) return 0;
  return value > 0.0 ? 1 : -1;
}

RunRecord iterate(cd e_v, double pump, const CavityParams& cav, const Medium& medium, Rng* noise,
                  std::uint64_t seed, const std::function<void(cd)>& observer) {
  const cd feedback = std::sqrt(cav.eta) * std::polar(1.0, cav.psi);
  const bool per_pass = cav.noise_mode == NoiseMode::kPerPass && noise != nullptr;

  RunRecord rec;
  rec.seed = seed;
  int quiet_passes = 0;
  int pass = 0;
  while (pass < cav.max_iters) {
    cd next = feedback * self_rotated_vertical(e_v, pump, medium);
    if (per_pass) next += complex_gaussian(*noise, cav.noise_sigma);
    ++pass;
    quiet_passes = std::abs(next - e_v) < cav.conv_tol ? quiet_passes + 1 : 0;
    e_v = next;
    if (observer) observer(e_v);
    if (quiet_passes >= cav.conv_window) {
      rec.converged = true;
      break;
    }
  }
  rec.iterations = pass;
  rec.steady_state = PolarizationState(pump, e_v);
  rec.helicity = sign_with_deadband(e_v.imag(), cav.conv_tol);
  return rec;
}

void require_positive_pump(double pump) {
  if (!(pump > 0.0) || !std::isfinite(pump))
    throw InvalidArgument("pump amplitude must be positive and finite");
}

}  // namespace

void CavityParams::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidEta("CavityParams: eta must lie in [0, 1]");
  if (!std::isfinite(psi)) throw InvalidArgument("CavityParams: psi must be finite");
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("CavityParams: noise_sigma must be >= 0");
  if (!(conv_tol > 0.0)) throw InvalidArgument("CavityParams: conv_tol must be > 0");
  if (max_iters <= 0) throw InvalidArgument("CavityParams: max_iters must be positive");
  if (conv_window <= 0) throw InvalidArgument("CavityParams: conv_window must be positive");
}

cd self_rotated_vertical(cd e_v, double pump, const Medium& medium) {
  const double eps = ellipticity(PolarizationState(pump, e_v));
  const double phi = self_rotation_angle(medium.atoms, medium.intensity_ratio, eps);
  return std::sin(phi) * pump + std::cos(phi) * e_v;
}

PolarizationState roundtrip(const PolarizationState& state, double pump, const CavityParams& cav,
                            const Medium& medium) {
  require_positive_pump(pump);
  const cd feedback = std::sqrt(cav.eta) * std::polar(1.0, cav.psi);
  return PolarizationState(pump, feedback * self_rotated_vertical(state.e_v(), pump, medium));
}

Eigen::Matrix2d linear_transfer_matrix(double gl, const CavityParams& cav) {
  Eigen::Matrix2d shear;
  shear << 1.0, gl, 0.0, 1.0;
  return std::sqrt(cav.eta) * Eigen::Rotation2Dd(cav.psi).toRotationMatrix() * shear;
}

std::array<cd, 2> transfer_eigenvalues(const Eigen::Matrix2d& m) {
  const double half_trace = 0.5 * m.trace();
  const cd root = std::sqrt(cd{half_trace * half_trace - m.determinant(), 0.0});
  return {half_trace + root, half_trace - root};
}

double spectral_radius(const Eigen::Matrix2d& m) {
  const auto ev = transfer_eigenvalues(m);
  return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

double threshold_gain(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidEta("threshold: eta must lie in (0, 1]");
  const double root = std::sqrt(eta);
  return 1.0 / root - root;
}

ThresholdResult threshold_check(double gl, double eta) {
  const double margin = gl - threshold_gain(eta);
  return ThresholdResult{margin > 0.0, margin};
}

double scan_max_spectral_radius(double gl, double eta, int scan_points) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidEta("scan_max_spectral_radius: eta must lie in (0, 1]");
  if (scan_points < 3) throw InvalidArgument("scan_max_spectral_radius: need at least 3 points");
  CavityParams cav;
  cav.eta = eta;
  const auto matrix_at = [&](double psi) {
    cav.psi = psi;
    return linear_transfer_matrix(gl, cav);
  };
  // det = eta for every psi, so the radius is a nondecreasing function of
  // |trace|. The radius itself is flat wherever the eigenvalues are complex,
  // which hides narrow peaks at small gl; |trace| is smooth everywhere.
  const auto abs_trace_at = [&](double psi) { return std::abs(matrix_at(psi).trace()); };
  const double step = std::numbers::pi / scan_points;
  int best = 0;
  double best_trace = -1.0;
  double best_radius = 0.0;
  for (int k = 0; k < scan_points; ++k) {
    const Eigen::Matrix2d m = matrix_at(k * step);
    best_radius = std::max(best_radius, spectral_radius(m));
    if (std::abs(m.trace()) > best_trace) {
      best_trace = std::abs(m.trace());
      best = k;
    }
  }
  const double psi = golden_section_argmax(abs_trace_at, (best - 1) * step, (best + 1) * step, 1e-13);
  return std::max(best_radius, spectral_radius(matrix_at(psi)));
}

double optimal_phase(double gl) { return std::atan(gl / 2.0); }

cd complex_gaussian(Rng& rng, double sigma) {
  std::normal_distribution<double> quadrature(0.0, sigma / std::numbers::sqrt2);
  const double re = quadrature(rng);
  const double im = quadrature(rng);
  return {re, im};
}

RunRecord run_from(cd initial_e_v, double pump, const CavityParams& cav, const Medium& medium,
                   std::uint64_t seed, const std::function<void(cd)>& observer) {
  require_positive_pump(pump);
  cav.validate();
  Rng noise(seed);
  return iterate(initial_e_v, pump, cav, medium, &noise, seed, observer);
}

RunRecord run_to_steady_state(double pump, const CavityParams& cav, const Medium& medium,
                              std::uint64_t rng_seed) {
  require_positive_pump(pump);
  cav.validate();
  Rng rng(rng_seed);
  const cd seed_field = complex_gaussian(rng, cav.noise_sigma);
  return iterate(seed_field, pump, cav, medium, &rng, rng_seed, {});
}

std::vector<LossSweepRow> sweep_loss(double pump, const Medium& medium, double psi,
                                     std::span<const double> eta_grid, int runs_per_point,
                                     std::uint64_t rng_seed, const CavityParams& base) {
  if (eta_grid.empty()) throw InvalidArgument("sweep_loss: eta grid is empty");
  if (runs_per_point <= 0) throw InvalidArgument("sweep_loss: runs_per_point must be positive");
  for (const double eta : eta_grid)
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidEta("sweep_loss: every eta must lie in (0, 1]");

  const std::size_t points = eta_grid.size();
  const auto runs = static_cast<std::size_t>(runs_per_point);
  std::vector<RunRecord> records(points * runs);
  parallel_for(records.size(), [&](std::size_t index) {
    CavityParams cav = base;
    cav.eta = eta_grid[index / runs];
    cav.psi = psi;
    records[index] = run_to_steady_state(pump, cav, medium, rng_seed + index);
  });

  const double gl = medium.gl();
  std::vector<LossSweepRow> rows(points);
  for (std::size_t j = 0; j < points; ++j) {
    LossSweepRow& row = rows[j];
    row.eta = eta_grid[j];
    row.runs = runs_per_point;
    row.above_threshold = threshold_check(gl, row.eta).above;
    for (std::size_t r = 0; r < runs; ++r) {
      const RunRecord& rec = records[j * runs + r];
      const QuadratureRatios q = quadratures_from_intensities(decompose(rec.steady_state));
      row.mean_re_ratio += q.re_ratio;
      row.mean_im_ratio += std::abs(q.im_ratio);
      if (!rec.converged) ++row.not_converged;
    }
    row.mean_re_ratio /= static_cast<double>(runs);
    row.mean_im_ratio /= static_cast<double>(runs);
  }
  return rows;
}

}  // namespace psr
