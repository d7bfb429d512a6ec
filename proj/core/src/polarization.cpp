#include "psr/polarization.hpp"

#include <cmath>
#include <numbers>

#include "psr/errors.hpp"

namespace psr {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Relative slack for quantities that vanish analytically.
constexpr double kRoundingSlack = 1e-12;

}  // namespace

PolarizationState::PolarizationState(double e_h, cd e_v) : e_h_(e_h), e_v_(e_v) {
  if (e_h < 0.0) {
    e_h_ = -e_h;
    e_v_ = -e_v;
  }
}

PolarizationState PolarizationState::jones(cd e_h, cd e_v) {
  PolarizationState s;
  s.e_h_ = e_h;
  s.e_v_ = e_v;
  return s;
}

PolarizationState PolarizationState::normalized() const {
  const double magnitude = std::abs(e_h_);
  if (magnitude == 0.0) return jones(0.0, e_v_);
  const cd unwind = std::conj(e_h_) / magnitude;
  return jones(magnitude, e_v_ * unwind);
}

double ellipticity(const PolarizationState& state) {
  const double power = state.power();
  if (power == 0.0) throw ZeroPower("ellipticity: zero-power state");
  // E_H Im E_V in the phase-referenced frame, written phase-invariantly.
  const double handed = (std::conj(state.e_h()) * state.e_v()).imag();
  return std::asin(handed / power);
}

IntensityRecord decompose(const PolarizationState& state) {
  const cd h = state.e_h();
  const cd v = state.e_v();
  IntensityRecord rec;
  rec.i_h = std::norm(h);
  rec.i_v = std::norm(v);
  rec.i_plus = 0.5 * std::norm(h + v);
  rec.i_minus = 0.5 * std::norm(h - v);
  rec.i_r = 0.5 * std::norm(h + kI * v);
  rec.i_l = 0.5 * std::norm(h - kI * v);
  return rec;
}

double ellipse_angle_from_intensities(const IntensityRecord& rec) {
  const double numerator = rec.i_plus - rec.i_minus;
  const double denominator = rec.i_plus + rec.i_minus - 2.0 * rec.i_v;
  const double scale = rec.i_plus + rec.i_minus;
  if (std::abs(numerator) <= kRoundingSlack * scale &&
      std::abs(denominator) <= kRoundingSlack * scale)
    throw UndefinedAngle("ellipse_angle_from_intensities: circular polarization has no major axis");
  return 0.5 * std::atan2(numerator, denominator);
}

QuadratureRatios quadratures_from_intensities(const IntensityRecord& rec) {
  if (!(rec.i_h > 0.0)) throw ZeroHorizontal("quadratures_from_intensities: I_H must be positive");
  const double imbalance = rec.i_l - rec.i_r;
  double radicand = 4.0 * rec.i_v * rec.i_h - imbalance * imbalance;
  const double total = rec.i_h + rec.i_v;
  if (radicand < 0.0) {
    if (radicand < -kRoundingSlack * total * total)
      throw InconsistentIntensities("quadratures_from_intensities: 4 I_V I_H < (I_L - I_R)^2");
    radicand = 0.0;
  }
  return QuadratureRatios{std::sqrt(radicand) / (2.0 * rec.i_h), imbalance / (2.0 * rec.i_h)};
}

PolarizationState rotate(const PolarizationState& state, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return PolarizationState::jones(c * state.e_h() - s * state.e_v(),
                                  s * state.e_h() + c * state.e_v());
}

PolarizationState waveplate(const PolarizationState& state, double retardance, double axis_angle) {
  const PolarizationState local = rotate(state, -axis_angle);
  const PolarizationState retarded =
      PolarizationState::jones(local.e_h(), local.e_v() * std::polar(1.0, retardance));
  return rotate(retarded, axis_angle);
}

PolarizationState quarter_wave_plate(const PolarizationState& state, double axis_angle) {
  return waveplate(state, std::numbers::pi / 2.0, axis_angle);
}

PolarizationState half_wave_plate(const PolarizationState& state, double axis_angle) {
  return waveplate(state, std::numbers::pi, axis_angle);
}

PolarizationState elliptical_state(double chi, double axis_angle) {
  return rotate(PolarizationState(std::cos(chi), cd{0.0, std::sin(chi)}), axis_angle);
}

}  // namespace psr
