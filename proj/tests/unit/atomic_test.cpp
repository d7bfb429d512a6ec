#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psr/atomic.hpp"
#include "psr/errors.hpp"

namespace psr {
namespace {

using cd = std::complex<double>;

AtomicParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> big(0.5, 1.5), small(0.0, 0.5), det(-1.5, 1.5);
  AtomicParams p;
  p.gamma_big = big(rng);
  p.gamma_small = small(rng);
  p.detuning = det(rng);
  p.gain_scale = 3.0;
  return p;
}

DriveField random_drive(std::mt19937_64& rng, double lo = 0.1, double hi = 1.5) {
  std::uniform_real_distribution<double> mag(lo, hi), phase(-M_PI, M_PI);
  return {std::polar(mag(rng), phase(rng)), std::polar(mag(rng), phase(rng))};
}

oracle::XSystem as_system(const AtomicParams& p, const DriveField& d) {
  return {p.gamma_big, p.gamma_small, p.detuning, d.omega_r, d.omega_l};
}

TEST(AtomicParams, ValidateRejectsBadRates) {
  AtomicParams p;
  p.gamma_big = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.gamma_small = -0.1;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.sat_intensity = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.gain_scale = INFINITY;
  EXPECT_THROW(p.validate(), InvalidArgument);
  EXPECT_NO_THROW(AtomicParams::from_delta(0.3).validate());
}

TEST(AtomicParams, DeltaUsesTotalLinewidth) {
  AtomicParams p;
  p.gamma_big = 1.0;
  p.gamma_small = 0.1;
  p.detuning = 0.11;
  EXPECT_DOUBLE_EQ(p.delta(), 0.1);
}

TEST(DriveField, IntensityRoundTrip) {
  const AtomicParams p = AtomicParams::from_delta(0.2);
  const DriveField d = drive_from_intensities(p, 9.0, 1.0);
  EXPECT_NEAR(intensity_ratio(p, d.omega_r), 9.0, 1e-12);
  EXPECT_NEAR(intensity_ratio(p, d.omega_l), 1.0, 1e-12);
  EXPECT_THROW((void)drive_from_intensities(p, -1.0, 1.0), InvalidArgument);
}

TEST(SteadyState, NoDriveGivesUnpolarizedGround) {
  const DensityMatrix4 s = steady_state(AtomicParams::from_delta(0.1), {});
  EXPECT_EQ(s.population(kExcitedMinus), 0.0);
  EXPECT_EQ(s.population(kExcitedPlus), 0.0);
  EXPECT_DOUBLE_EQ(s.population(kGroundPlus), 0.5);
  EXPECT_DOUBLE_EQ(s.population(kGroundMinus), 0.5);
  EXPECT_TRUE(s.rho.isDiagonal());
}

TEST(SteadyState, ResonantSingleDriveIsPureAbsorption) {
  const AtomicParams p = AtomicParams::from_delta(0.0);
  const DensityMatrix4 single = steady_state(p, {cd{0.4, 0.0}, cd{}});
  EXPECT_NEAR(single(kGroundPlus, kExcitedMinus).real(), 0.0, 1e-14);
  // A lone drive pumps everything into the undriven ground level.
  EXPECT_NEAR(single.population(kGroundMinus), 1.0, 1e-12);

  const DensityMatrix4 both = steady_state(p, {cd{0.4, 0.0}, cd{0.2, 0.0}});
  const cd r12 = both(kGroundPlus, kExcitedMinus);
  EXPECT_NEAR(r12.real(), 0.0, 1e-14);
  EXPECT_GT(std::abs(r12.imag()), 1e-3);
}

TEST(SteadyState, MatchesOdeOracleOnReferencePoint) {
  AtomicParams p;
  p.gamma_big = 1.0;
  p.gamma_small = 0.1;
  p.detuning = 0.11;
  p.dipole = 1.0;
  const DriveField d{cd{0.3, 0.0}, cd{0.1, 0.0}};
  const DensityMatrix4 s = steady_state(p, d);
  const auto ode = oracle::integrate_to_steady_state(as_system(p, d));
  ASSERT_LT(ode.final_rate, 1e-12);
  EXPECT_LT((s.rho - ode.rho).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SteadyState, EqualDrivesAreNonSingular) {
  const AtomicParams p = AtomicParams::from_delta(0.3);
  const DensityMatrix4 s = steady_state(p, {cd{0.5, 0.0}, cd{0.5, 0.0}});
  EXPECT_LT(master_equation_residual(p, {cd{0.5, 0.0}, cd{0.5, 0.0}}, s), 1e-10);
}

TEST(SteadyState, ExcitedPopulationClosedForm) {
  // rho22 = rho44 = 1 / (4 + |g|^2 (1/|Omega_R|^2 + 1/|Omega_L|^2)), |g|^2 = G^2/4 + Delta^2.
  AtomicParams p;
  p.gamma_big = 1.0;
  p.gamma_small = 0.2;
  p.detuning = -0.4;
  const DriveField d{cd{0.3, 0.2}, cd{-0.5, 0.1}};
  const double g2 = 0.25 * 1.2 * 1.2 + 0.16;
  const double expected = 1.0 / (4.0 + g2 * (1.0 / std::norm(d.omega_r) + 1.0 / std::norm(d.omega_l)));
  const DensityMatrix4 s = steady_state(p, d);
  EXPECT_NEAR(s.population(kExcitedMinus), expected, 1e-12);
  EXPECT_NEAR(s.population(kExcitedPlus), expected, 1e-12);
}

TEST(SteadyState, InvariantsOnRandomDraws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const AtomicParams p = random_params(rng);
    const DriveField d = random_drive(rng, 0.0, 3.0);
    const DensityMatrix4 s = steady_state(p, d);
    EXPECT_LT((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(std::abs(s.trace() - 1.0), 1e-10);
    for (int i = 0; i < 4; ++i) {
      EXPECT_GE(s.population(i), -1e-10);
      EXPECT_LE(s.population(i), 1.0 + 1e-10);
      EXPECT_NEAR(s.rho(i, i).imag(), 0.0, 1e-12);
    }
    EXPECT_LT(master_equation_residual(p, d, s), 1e-10);
  }
}

TEST(SteadyState, MatchesOdeOracleOnRandomDraws) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicParams p = random_params(rng);
    const DriveField d = random_drive(rng);
    const auto ode = oracle::integrate_to_steady_state(as_system(p, d));
    ASSERT_LT(ode.final_rate, 1e-12) << "trial " << trial;
    EXPECT_LT((steady_state(p, d).rho - ode.rho).cwiseAbs().maxCoeff(), 1e-8) << "trial " << trial;
  }
}

TEST(SteadyState, RatesAgreeWithOracleRightHandSide) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicParams p = random_params(rng);
    const DriveField d = random_drive(rng);
    Eigen::Matrix4cd rho;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho(i, j) = cd{n01(rng), n01(rng)};
    rho = (rho + rho.adjoint()).eval();
    const auto rates = master_equation_rates(p, d, rho);
    const Eigen::Matrix4cd ref = oracle::lindblad_rhs(as_system(p, d), rho);
    const std::array<std::pair<int, int>, 10> order{
        {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}}};
    for (std::size_t k = 0; k < order.size(); ++k)
      EXPECT_LT(std::abs(rates[k] - ref(order[k].first, order[k].second)), 1e-12) << k;
  }
}

TEST(OpticalResponse, EqualIntensitiesNoBirefringence) {
  const AtomicParams p = AtomicParams::from_delta(0.25, 2.0);
  const OpticalResponse r = optical_response(p, drive_from_intensities(p, 3.0, 3.0));
  EXPECT_NEAR(r.n_r_minus_1, r.n_l_minus_1, 1e-12);
}

TEST(OpticalResponse, ResonanceHasNoDispersion) {
  const AtomicParams p = AtomicParams::from_delta(0.0, 2.0);
  const OpticalResponse r = optical_response(p, drive_from_intensities(p, 9.0, 1.0));
  EXPECT_NEAR(r.n_r_minus_1, 0.0, 1e-14);
  EXPECT_NEAR(r.n_l_minus_1, 0.0, 1e-14);
}

TEST(OpticalResponse, ReferencePointMatchesClosedForm) {
  const AtomicParams p = AtomicParams::from_delta(0.1, 1.0);
  const OpticalResponse num = optical_response(p, drive_from_intensities(p, 9.0, 1.0));
  // -C delta x_L / ((1 + 4 delta^2) x + 4 x_R x_L) with x = 10.
  const double denom = 1.04 * 10.0 + 36.0;
  EXPECT_NEAR(num.n_r_minus_1, -0.1 * 1.0 / denom, 1e-6 * 0.1 / denom);
  EXPECT_NEAR(num.n_l_minus_1, -0.1 * 9.0 / denom, 1e-6 * 0.9 / denom);
}

TEST(OpticalResponse, SteadyStateMatchesClosedFormOnRandomDraws) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicParams p = random_params(rng);
    const DriveField d = random_drive(rng, 0.05, 3.0);
    const OpticalResponse num = optical_response(p, d);
    const OpticalResponse ref =
        closed_form_response(p, intensity_ratio(p, d.omega_r), intensity_ratio(p, d.omega_l));
    EXPECT_NEAR(num.n_r_minus_1, ref.n_r_minus_1, 1e-6 * std::abs(ref.n_r_minus_1));
    EXPECT_NEAR(num.n_l_minus_1, ref.n_l_minus_1, 1e-6 * std::abs(ref.n_l_minus_1));
    EXPECT_NEAR(num.absorption, ref.absorption, 1e-6 * std::abs(ref.absorption));
  }
}

TEST(OpticalResponse, BirefringenceOddUnderSwap) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicParams p = random_params(rng);
    const DriveField d = random_drive(rng);
    const OpticalResponse a = optical_response(p, d);
    const OpticalResponse b = optical_response(p, {d.omega_l, d.omega_r});
    EXPECT_NEAR(a.n_r_minus_1 - a.n_l_minus_1, -(b.n_r_minus_1 - b.n_l_minus_1), 1e-12);
  }
}

TEST(OpticalResponse, ZeroComponentUsesProbeLimit) {
  const AtomicParams p = AtomicParams::from_delta(0.2, 1.5);
  const OpticalResponse r = optical_response(p, drive_from_intensities(p, 4.0, 0.0));
  EXPECT_NEAR(r.n_l_minus_1, -1.5 * 0.2 / (1.0 + 4.0 * 0.04), 1e-12);
  EXPECT_TRUE(std::isfinite(r.n_r_minus_1));
  EXPECT_THROW((void)optical_response(p, {}), ZeroField);
}

TEST(SelfRotation, ZeroAndOddInEllipticity) {
  const AtomicParams p = AtomicParams::from_delta(0.1, 110.4);
  EXPECT_EQ(self_rotation_angle(p, 10.0, 0.0), 0.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> eps(-M_PI / 4, M_PI / 4), x(0.0, 50.0), det(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    AtomicParams q = AtomicParams::from_delta(det(rng), 7.0);
    const double e = eps(rng), xi = x(rng);
    EXPECT_DOUBLE_EQ(self_rotation_angle(q, xi, -e), -self_rotation_angle(q, xi, e));
    AtomicParams flipped = q;
    flipped.detuning = -q.detuning;
    EXPECT_DOUBLE_EQ(self_rotation_angle(flipped, xi, e), -self_rotation_angle(q, xi, e));
  }
}

TEST(SelfRotation, MatchesIndexRoute) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> eps(-M_PI / 4, M_PI / 4), x(0.0, 50.0), det(-2.0, 2.0),
      c(0.1, 200.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const AtomicParams p = AtomicParams::from_delta(det(rng), c(rng));
    const double e = eps(rng), xi = x(rng);
    EXPECT_NEAR(self_rotation_angle(p, xi, e), self_rotation_angle_from_indices(p, xi, e), 1e-12);
  }
  const AtomicParams p = AtomicParams::from_delta(0.3, 5.0);
  EXPECT_NEAR(self_rotation_angle(p, 0.0, 0.2), self_rotation_angle_from_indices(p, 0.0, 0.2), 1e-15);
}

TEST(SelfRotation, ReferenceCurveRisesFromZero) {
  const AtomicParams p = AtomicParams::from_delta(0.1, 110.4);
  double prev = self_rotation_angle(p, 10.0, 0.0);
  EXPECT_EQ(prev, 0.0);
  for (int k = 1; k <= 20; ++k) {
    const double phi = self_rotation_angle(p, 10.0, 0.01 * k);
    EXPECT_GT(phi, prev);
    prev = phi;
  }
}

TEST(SelfRotation, ArgmaxGridAgreesWithGoldenSection) {
  const AtomicParams p = AtomicParams::from_delta(0.1, 110.4);
  const auto f = [&](double e) { return self_rotation_angle(p, 10.0, e); };
  const double grid = oracle::grid_argmax(f, 0.0, M_PI / 4, 100001);

  double a = 0.0, b = M_PI / 4;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > 1e-10) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (f(c) > f(d))
      b = d;
    else
      a = c;
  }
  EXPECT_NEAR(grid, 0.5 * (a + b), 1e-5);
  EXPECT_NEAR(f(grid), f(0.5 * (a + b)), 1e-9);
}

TEST(SmallSignalGain, ZeroOnResonance) {
  EXPECT_EQ(small_signal_gain(AtomicParams::from_delta(0.0, 50.0), 10.0), 0.0);
}

TEST(SmallSignalGain, MatchesFiniteDifference) {
  for (double delta = -1.0; delta <= 1.0; delta += 0.125) {
    for (double x = 0.0; x <= 40.0; x += 5.0) {
      const AtomicParams p = AtomicParams::from_delta(delta, 20.0);
      const double h = 1e-6;
      const double fd = (self_rotation_angle(p, x, h) - self_rotation_angle(p, x, -h)) / (2 * h);
      const double gl = small_signal_gain(p, x);
      EXPECT_NEAR(gl, fd, 1e-6 * std::max(std::abs(gl), 1e-12)) << delta << ' ' << x;
    }
  }
}

TEST(SmallSignalGain, GainScaleInversion) {
  const double c = gain_scale_for(0.1, 10.0, 1.0);
  EXPECT_NEAR(c, 110.4, 1e-12);
  EXPECT_NEAR(small_signal_gain(AtomicParams::from_delta(0.1, c), 10.0), 1.0, 1e-14);
  EXPECT_THROW((void)gain_scale_for(0.0, 10.0, 1.0), InvalidArgument);
}

}  // namespace
}  // namespace psr
