#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace psr::oracle {

using cd = std::complex<double>;

Eigen::Matrix4cd lindblad_rhs(const XSystem& sys, const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 1) = -sys.omega_r;
  h(1, 0) = -std::conj(sys.omega_r);
  h(2, 3) = -sys.omega_l;
  h(3, 2) = -std::conj(sys.omega_l);
  h(1, 1) = -sys.detuning;
  h(3, 3) = -sys.detuning;

  const double width = sys.gamma_big + sys.gamma_small;
  Eigen::Matrix4cd decay = Eigen::Matrix4cd::Zero();
  decay(1, 1) = width;
  decay(3, 3) = width;

  const cd i{0.0, 1.0};
  Eigen::Matrix4cd out = -i * (h * rho - rho * h) - 0.5 * (decay * rho + rho * decay);
  out(0, 0) += sys.gamma_big * rho(3, 3) + sys.gamma_small * rho(1, 1);
  out(2, 2) += sys.gamma_big * rho(1, 1) + sys.gamma_small * rho(3, 3);
  return out;
}

OdeResult integrate_to_steady_state(const XSystem& sys, double dt, double tol, long max_steps) {
  OdeResult res;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = 0.5;
  rho(2, 2) = 0.5;
  for (long n = 0; n < max_steps; ++n) {
    const Eigen::Matrix4cd k1 = lindblad_rhs(sys, rho);
    const double rate = k1.cwiseAbs().maxCoeff();
    if (rate < tol) {
      res.final_rate = rate;
      res.steps = n;
      break;
    }
    const Eigen::Matrix4cd k2 = lindblad_rhs(sys, rho + 0.5 * dt * k1);
    const Eigen::Matrix4cd k3 = lindblad_rhs(sys, rho + 0.5 * dt * k2);
    const Eigen::Matrix4cd k4 = lindblad_rhs(sys, rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    res.final_rate = rate;
    res.steps = n + 1;
  }
  res.rho = rho;
  return res;
}

std::vector<cd> eigenvalues(const Eigen::Matrix2d& m) {
  const Eigen::EigenSolver<Eigen::Matrix2d> solver(m, false);
  const auto ev = solver.eigenvalues();
  return {ev(0), ev(1)};
}

double enumerate_ground_energy(const Eigen::MatrixXd& j) {
  const auto n = j.rows();
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  double best = INFINITY;
  std::function<void(Eigen::Index)> recurse = [&](Eigen::Index pos) {
    if (pos == n) {
      double e = 0.0;
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b)
          e -= j(a, b) * s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)];
      best = std::min(best, e);
      return;
    }
    for (const int v : {1, -1}) {
      s[static_cast<std::size_t>(pos)] = v;
      recurse(pos + 1);
    }
  };
  recurse(0);
  return best;
}

double bernoulli_band_containment(std::size_t m_len, std::size_t max_lag, double half_width,
                                  int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s(m_len);
  long inside = 0;
  for (int t = 0; t < trials; ++t) {
    for (auto& v : s) v = coin(rng) ? 1 : -1;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
      double sum = 0.0;
      for (std::size_t n = 0; n + lag < m_len; ++n) sum += s[n] * s[n + lag];
      if (std::abs(sum / static_cast<double>(m_len - lag)) <= half_width) ++inside;
    }
  }
  return static_cast<double>(inside) / (static_cast<double>(trials) * static_cast<double>(max_lag));
}

}  // namespace psr::oracle
