#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace psr {

/// Parameters of the degenerate J=1/2 -> J'=1/2 (X-shaped) atom.
///
/// Rates share one arbitrary time unit; only the ratios delta() and I/I_sat
/// enter the optical response. gain_scale absorbs number density, wavenumber
/// and cell length into a single dimensionless constant C.
struct AtomicParams {
  double gamma_big = 1.0;    ///< Cross decay e(-1/2)->g(-1/2), e(+1/2)->g(+1/2).
  double gamma_small = 0.0;  ///< Direct decay e(-1/2)->g(+1/2), e(+1/2)->g(-1/2).
  double detuning = 0.0;     ///< Laser detuning from the atomic line.
  double dipole = 1.0;       ///< Transition dipole, Rabi = dipole * field.
  double sat_intensity = 1.0;
  double gain_scale = 1.0;  ///< C.

  /// Total coherence-relevant linewidth, gamma_big + gamma_small.
  [[nodiscard]] double linewidth() const noexcept { return gamma_big + gamma_small; }
  /// Detuning in units of the linewidth.
  [[nodiscard]] double delta() const noexcept { return detuning / linewidth(); }

  /// Throws InvalidArgument when the invariants are violated.
  void validate() const;

  /// Unit linewidth (gamma_big = 1, gamma_small = 0) with the given delta.
  static AtomicParams from_delta(double delta, double gain_scale = 1.0);
};

/// Complex Rabi frequencies of the right- and left-circular components.
struct DriveField {
  std::complex<double> omega_r{};
  std::complex<double> omega_l{};
};

/// I/I_sat for one circular component: 4 |Omega|^2 / (Gamma + gamma)^2.
[[nodiscard]] double intensity_ratio(const AtomicParams& params, std::complex<double> omega);

/// Real Rabi frequencies reproducing the requested I_R/I_sat and I_L/I_sat.
[[nodiscard]] DriveField drive_from_intensities(const AtomicParams& params, double i_r_ratio,
                                                double i_l_ratio);

/// Level indices of the 4x4 density matrix.
enum Level : int {
  kGroundPlus = 0,    // g, m = +1/2   (1)
  kExcitedMinus = 1,  // e, m = -1/2   (2)
  kGroundMinus = 2,   // g, m = -1/2   (3)
  kExcitedPlus = 3,   // e, m = +1/2   (4)
};

struct DensityMatrix4 {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

  [[nodiscard]] std::complex<double> operator()(int i, int j) const { return rho(i, j); }
  [[nodiscard]] double population(int i) const { return rho(i, i).real(); }
  [[nodiscard]] std::complex<double> trace() const { return rho.trace(); }
};

/// Time derivatives of rho11, rho22, rho33, rho44, rho12, rho34, rho24,
/// rho23, rho14, rho13, in that order.
using MasterRates = std::array<std::complex<double>, 10>;

/// Right-hand sides of the master equations evaluated at rho.
///
/// The cross coherences rho13, rho14, rho23, rho24 carry the relaxation
/// -1/2 {Gamma, rho} of the excited levels they involve; without it the
/// steady state is not unique whenever |Omega_R| = |Omega_L|.
[[nodiscard]] MasterRates master_equation_rates(const AtomicParams& params, const DriveField& drive,
                                                const Eigen::Matrix4cd& rho);

/// Largest |rate| divided by (Gamma + gamma).
[[nodiscard]] double master_equation_residual(const AtomicParams& params, const DriveField& drive,
                                              const DensityMatrix4& state);

/// Stationary density matrix under the bichromatic drive.
///
/// Solves the 16 real unknowns (four populations, six complex coherences)
/// with the redundant rho11 equation replaced by Tr rho = 1. With no drive
/// at all the stationary subspace is degenerate and the unpolarized ground
/// state rho11 = rho33 = 1/2 is returned. Throws SingularSystem if the
/// system is numerically rank deficient.
[[nodiscard]] DensityMatrix4 steady_state(const AtomicParams& params, const DriveField& drive);

/// Refractive-index shifts and absorption of the two circular components,
/// each reported up to the common scale C.
struct OpticalResponse {
  double n_r_minus_1 = 0.0;
  double n_l_minus_1 = 0.0;
  /// Intensity-weighted absorption of the full beam.
  double absorption = 0.0;
};

/// Response derived from the steady-state coherences rho12 / Omega_R and
/// rho34 / Omega_L. A component with exactly zero amplitude gets the
/// weak-probe limit of the closed form; ZeroField if both are zero.
[[nodiscard]] OpticalResponse optical_response(const AtomicParams& params, const DriveField& drive);

/// Closed-form response in terms of I_R/I_sat and I_L/I_sat.
///
///   n_R - 1 = -C delta x_L / [(1 + 4 delta^2) x + 4 x_R x_L]
///   n_L - 1 = -C delta x_R / [(1 + 4 delta^2) x + 4 x_R x_L]
[[nodiscard]] OpticalResponse closed_form_response(const AtomicParams& params, double i_r_ratio,
                                                   double i_l_ratio);

/// Polarization-ellipse rotation after the medium:
///   phi = C delta sin(2 eps) / [(2 + 8 delta^2) + (1 + cos(4 eps)) I/I_sat]
[[nodiscard]] double self_rotation_angle(const AtomicParams& params, double intensity_ratio,
                                         double ellipticity);

/// Same angle computed as -(n_R - n_L)/2 with I_R = I(1 - sin 2eps)/2 and
/// I_L = I(1 + sin 2eps)/2.
[[nodiscard]] double self_rotation_angle_from_indices(const AtomicParams& params,
                                                      double intensity_ratio, double ellipticity);

/// d phi / d eps at eps = 0, i.e. gl = 2 C delta / [(2 + 8 delta^2) + 2 I/I_sat].
[[nodiscard]] double small_signal_gain(const AtomicParams& params, double intensity_ratio);

/// The C that makes small_signal_gain equal target_gl.
[[nodiscard]] double gain_scale_for(double delta, double intensity_ratio, double target_gl);

}  // namespace psr
