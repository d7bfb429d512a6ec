#pragma once

#include <complex>

namespace psr {

/// Jones vector (E_H, E_V).
///
/// States built from a real horizontal amplitude follow the phase
/// convention E_H >= 0. Intra-loop results (rotate, waveplate) may carry a
/// complex E_H; normalized() restores the convention.
class PolarizationState {
 public:
  PolarizationState() = default;
  /// Phase-referenced state. A negative e_h is folded into the global phase.
  PolarizationState(double e_h, std::complex<double> e_v);

  /// Arbitrary Jones vector, kept as given.
  static PolarizationState jones(std::complex<double> e_h, std::complex<double> e_v);

  [[nodiscard]] std::complex<double> e_h() const noexcept { return e_h_; }
  [[nodiscard]] std::complex<double> e_v() const noexcept { return e_v_; }
  [[nodiscard]] double power() const noexcept { return std::norm(e_h_) + std::norm(e_v_); }

  /// Same physical state with E_H real and non-negative.
  [[nodiscard]] PolarizationState normalized() const;

  friend bool operator==(const PolarizationState&, const PolarizationState&) = default;

 private:
  std::complex<double> e_h_{};
  std::complex<double> e_v_{};
};

/// Intensities in the canonical (H/V), diagonal (+/-45 deg) and circular
/// bases. R projects on (1, -i)/sqrt2 so that Im E_V > 0 means I_L > I_R.
struct IntensityRecord {
  double i_h = 0.0;
  double i_v = 0.0;
  double i_plus = 0.0;
  double i_minus = 0.0;
  double i_r = 0.0;
  double i_l = 0.0;
};

/// eps = arcsin(E_H Im E_V / (|E_H|^2 + |E_V|^2)) for the phase-referenced
/// state. Circular light gives arcsin(1/2), not pi/4. Throws ZeroPower.
[[nodiscard]] double ellipticity(const PolarizationState& state);

[[nodiscard]] IntensityRecord decompose(const PolarizationState& state);

/// Major-axis angle phi = 1/2 atan2(I+ - I-, I+ + I- - 2 I_V) in
/// (-pi/2, pi/2]. Throws UndefinedAngle for circular light.
[[nodiscard]] double ellipse_angle_from_intensities(const IntensityRecord& rec);

struct QuadratureRatios {
  double re_ratio = 0.0;  ///< |Re E_V| / E_H; the sign is not recoverable.
  double im_ratio = 0.0;  ///< Im E_V / E_H.
};

/// Im E_V/E_H = (I_L - I_R)/(2 I_H) and
/// Re E_V/E_H = sqrt(4 I_V I_H - (I_L - I_R)^2)/(2 I_H).
///
/// A radicand down to -1e-12 (relative to the squared total power) is
/// treated as rounding and clamped; anything lower throws
/// InconsistentIntensities. Throws ZeroHorizontal if I_H = 0.
[[nodiscard]] QuadratureRatios quadratures_from_intensities(const IntensityRecord& rec);

/// Applies [[cos, -sin], [sin, cos]] to (E_H, E_V). No re-normalization.
[[nodiscard]] PolarizationState rotate(const PolarizationState& state, double angle);

/// Linear retarder with fast axis at axis_angle and the given retardance.
[[nodiscard]] PolarizationState waveplate(const PolarizationState& state, double retardance,
                                          double axis_angle);

[[nodiscard]] PolarizationState quarter_wave_plate(const PolarizationState& state, double axis_angle);
[[nodiscard]] PolarizationState half_wave_plate(const PolarizationState& state, double axis_angle);

/// Unit-power ellipse with axis ratio tan(chi), major axis at axis_angle.
/// Positive chi has Im E_V > 0 when the axis is horizontal.
[[nodiscard]] PolarizationState elliptical_state(double chi, double axis_angle = 0.0);

}  // namespace psr
