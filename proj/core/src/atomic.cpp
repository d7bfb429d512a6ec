#include "psr/atomic.hpp"

#include <algorithm>
#include <cmath>

#include "psr/errors.hpp"

namespace psr {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

constexpr int kUnknowns = 16;
using SteadyMatrix = Eigen::Matrix<double, kUnknowns, kUnknowns>;
using SteadyVector = Eigen::Matrix<double, kUnknowns, 1>;

// Unknown layout: rho11, rho22, rho33, rho44, then (re, im) of rho12,
// rho34, rho13, rho14, rho23, rho24.
constexpr std::array<std::pair<int, int>, 6> kCoherences{{
    {kGroundPlus, kExcitedMinus},   // 12
    {kGroundMinus, kExcitedPlus},   // 34
    {kGroundPlus, kGroundMinus},    // 13
    {kGroundPlus, kExcitedPlus},    // 14
    {kExcitedMinus, kGroundMinus},  // 23
    {kExcitedMinus, kExcitedPlus},  // 24
}};

Eigen::Matrix4cd unpack(const SteadyVector& x) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) rho(i, i) = x(i);
  for (std::size_t c = 0; c < kCoherences.size(); ++c) {
    const auto [i, j] = kCoherences[c];
    const cd value{x(4 + 2 * static_cast<int>(c)), x(5 + 2 * static_cast<int>(c))};
    rho(i, j) = value;
    rho(j, i) = std::conj(value);
  }
  return rho;
}

void pack_rates(const MasterRates& rates, Eigen::Ref<SteadyVector> column) {
  for (int k = 0; k < 4; ++k) column(k) = rates[k].real();
  for (int k = 4; k < 10; ++k) {
    column(2 * k - 4) = rates[k].real();
    column(2 * k - 3) = rates[k].imag();
  }
}

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void AtomicParams::validate() const {
  if (!(gamma_big > 0.0) || !std::isfinite(gamma_big))
    throw InvalidArgument("AtomicParams: gamma_big must be positive and finite");
  if (!(gamma_small >= 0.0) || !std::isfinite(gamma_small))
    throw InvalidArgument("AtomicParams: gamma_small must be non-negative and finite");
  if (!std::isfinite(detuning)) throw InvalidArgument("AtomicParams: detuning must be finite");
  if (!(dipole > 0.0) || !std::isfinite(dipole))
    throw InvalidArgument("AtomicParams: dipole must be positive and finite");
  if (!(sat_intensity > 0.0) || !std::isfinite(sat_intensity))
    throw InvalidArgument("AtomicParams: sat_intensity must be positive and finite");
  if (!std::isfinite(gain_scale)) throw InvalidArgument("AtomicParams: gain_scale must be finite");
  if (!std::isfinite(delta())) throw InvalidArgument("AtomicParams: delta is not finite");
}

AtomicParams AtomicParams::from_delta(double delta, double gain_scale) {
  AtomicParams p;
  p.gamma_big = 1.0;
  p.gamma_small = 0.0;
  p.detuning = delta;
  p.gain_scale = gain_scale;
  return p;
}

double intensity_ratio(const AtomicParams& params, cd omega) {
  const double g = params.linewidth();
  return 4.0 * std::norm(omega) / (g * g);
}

DriveField drive_from_intensities(const AtomicParams& params, double i_r_ratio, double i_l_ratio) {
  if (!(i_r_ratio >= 0.0) || !(i_l_ratio >= 0.0))
    throw InvalidArgument("drive_from_intensities: intensity ratios must be non-negative");
  const double half_width = 0.5 * params.linewidth();
  return DriveField{cd{half_width * std::sqrt(i_r_ratio), 0.0},
                    cd{half_width * std::sqrt(i_l_ratio), 0.0}};
}

MasterRates master_equation_rates(const AtomicParams& params, const DriveField& drive,
                                  const Eigen::Matrix4cd& rho) {
  const double big = params.gamma_big;
  const double small = params.gamma_small;
  const double width = big + small;
  const double det = params.detuning;
  const cd wr = drive.omega_r;
  const cd wl = drive.omega_l;

  const cd r11 = rho(0, 0), r22 = rho(1, 1), r33 = rho(2, 2), r44 = rho(3, 3);
  const cd r12 = rho(0, 1), r34 = rho(2, 3);
  const cd r13 = rho(0, 2), r14 = rho(0, 3), r23 = rho(1, 2), r24 = rho(1, 3);
  const cd optical = 0.5 * width + kI * det;

  MasterRates d;
  d[0] = big * r44 + small * r22 + kI * wr * std::conj(r12) - kI * std::conj(wr) * r12;
  d[1] = -width * r22 - kI * wr * std::conj(r12) + kI * std::conj(wr) * r12;
  d[2] = big * r22 + small * r44 + kI * wl * std::conj(r34) - kI * std::conj(wl) * r34;
  d[3] = -width * r44 - kI * wl * std::conj(r34) + kI * std::conj(wl) * r34;
  d[4] = -optical * r12 - kI * wr * (r11 - r22);
  d[5] = -optical * r34 - kI * wl * (r33 - r44);
  d[6] = -width * r24 + kI * std::conj(wr) * r14 - kI * wl * r23;
  d[7] = (-0.5 * width + kI * det) * r23 + kI * std::conj(wr) * r13 - kI * std::conj(wl) * r24;
  d[8] = (-0.5 * width - kI * det) * r14 + kI * wr * r24 - kI * wl * r13;
  d[9] = kI * wr * r23 - kI * std::conj(wl) * r14;
  return d;
}

double master_equation_residual(const AtomicParams& params, const DriveField& drive,
                                const DensityMatrix4& state) {
  const auto rates = master_equation_rates(params, drive, state.rho);
  double worst = 0.0;
  for (const auto& r : rates) worst = std::max(worst, std::abs(r));
  return worst / params.linewidth();
}

DensityMatrix4 steady_state(const AtomicParams& params, const DriveField& drive) {
  params.validate();
  if (!finite(drive.omega_r) || !finite(drive.omega_l))
    throw InvalidArgument("steady_state: drive must be finite");

  if (drive.omega_r == cd{} && drive.omega_l == cd{}) {
    DensityMatrix4 dark;
    dark.rho(kGroundPlus, kGroundPlus) = 0.5;
    dark.rho(kGroundMinus, kGroundMinus) = 0.5;
    return dark;
  }

  SteadyMatrix a;
  for (int k = 0; k < kUnknowns; ++k) {
    const auto rates = master_equation_rates(params, drive, unpack(SteadyVector::Unit(k)));
    pack_rates(rates, a.col(k));
  }
  // The four population equations sum to zero; swap one for the trace.
  a /= params.linewidth();
  a.row(0).setZero();
  a.row(0).head<4>().setOnes();

  const Eigen::FullPivLU<SteadyMatrix> lu(a);
  if (!lu.isInvertible())
    throw SingularSystem("steady_state: master equations are rank deficient (rank " +
                         std::to_string(lu.rank()) + " of 16)");

  DensityMatrix4 out;
  out.rho = unpack(lu.solve(SteadyVector::Unit(0)));
  return out;
}

OpticalResponse closed_form_response(const AtomicParams& params, double i_r_ratio,
                                     double i_l_ratio) {
  if (!(i_r_ratio >= 0.0) || !(i_l_ratio >= 0.0))
    throw InvalidArgument("closed_form_response: intensity ratios must be non-negative");
  const double total = i_r_ratio + i_l_ratio;
  if (total == 0.0) throw ZeroField("closed_form_response: both circular components are zero");

  const double c = params.gain_scale;
  const double delta = params.delta();
  const double denom = (1.0 + 4.0 * delta * delta) * total + 4.0 * i_r_ratio * i_l_ratio;

  OpticalResponse out;
  out.n_r_minus_1 = -c * delta * i_l_ratio / denom;
  out.n_l_minus_1 = -c * delta * i_r_ratio / denom;
  out.absorption = c * i_r_ratio * i_l_ratio / (denom * total);
  return out;
}

OpticalResponse optical_response(const AtomicParams& params, const DriveField& drive) {
  const bool has_r = drive.omega_r != cd{};
  const bool has_l = drive.omega_l != cd{};
  if (!has_r && !has_l) throw ZeroField("optical_response: both circular components are zero");

  const DensityMatrix4 state = steady_state(params, drive);
  const double scale = 0.25 * params.linewidth() * params.gain_scale;
  const double x_r = intensity_ratio(params, drive.omega_r);
  const double x_l = intensity_ratio(params, drive.omega_l);
  // Only a zero component needs the closed form; its probe limit does not
  // depend on the other component's intensity.
  const OpticalResponse probe_limit = closed_form_response(params, has_r ? x_r : 0.0, has_l ? x_l : 0.0);

  OpticalResponse out;
  double weighted_absorption = 0.0;
  if (has_r) {
    const cd ratio = state(kGroundPlus, kExcitedMinus) / drive.omega_r;
    out.n_r_minus_1 = scale * ratio.real();
    weighted_absorption += x_r * (-scale * ratio.imag());
  } else {
    out.n_r_minus_1 = probe_limit.n_r_minus_1;
  }
  if (has_l) {
    const cd ratio = state(kGroundMinus, kExcitedPlus) / drive.omega_l;
    out.n_l_minus_1 = scale * ratio.real();
    weighted_absorption += x_l * (-scale * ratio.imag());
  } else {
    out.n_l_minus_1 = probe_limit.n_l_minus_1;
  }
  out.absorption = weighted_absorption / (x_r + x_l);
  return out;
}

double self_rotation_angle(const AtomicParams& params, double intensity_ratio, double ellipticity) {
  const double delta = params.delta();
  return params.gain_scale * delta * std::sin(2.0 * ellipticity) /
         ((2.0 + 8.0 * delta * delta) + (1.0 + std::cos(4.0 * ellipticity)) * intensity_ratio);
}

double self_rotation_angle_from_indices(const AtomicParams& params, double intensity_ratio,
                                        double ellipticity) {
  const double s = std::sin(2.0 * ellipticity);
  if (intensity_ratio == 0.0) {
    // Weak-probe limit: both indices lose their saturation term.
    const double delta = params.delta();
    return params.gain_scale * delta * s / (2.0 * (1.0 + 4.0 * delta * delta));
  }
  const double i_r = intensity_ratio * (1.0 - s) / 2.0;
  const double i_l = intensity_ratio * (1.0 + s) / 2.0;
  const OpticalResponse n = closed_form_response(params, i_r, i_l);
  return -0.5 * (n.n_r_minus_1 - n.n_l_minus_1);
}

double small_signal_gain(const AtomicParams& params, double intensity_ratio) {
  const double delta = params.delta();
  return 2.0 * params.gain_scale * delta / ((2.0 + 8.0 * delta * delta) + 2.0 * intensity_ratio);
}

double gain_scale_for(double delta, double intensity_ratio, double target_gl) {
  if (delta == 0.0) {
    if (target_gl == 0.0) return 0.0;
    throw InvalidArgument("gain_scale_for: no gain on resonance (delta = 0)");
  }
  return target_gl * ((2.0 + 8.0 * delta * delta) + 2.0 * intensity_ratio) / (2.0 * delta);
}

}  // namespace psr
