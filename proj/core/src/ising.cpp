#include "psr/ising.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "psr/errors.hpp"
#include "psr/parallel.hpp"

namespace psr {
namespace {

using cd = std::complex<double>;

void require_size(const IsingProblem& problem, std::size_t n, const char* where) {
  if (problem.size() != n)
    throw DimensionMismatch(std::string(where) + ": problem has " + std::to_string(problem.size()) +
                            " spins but got " + std::to_string(n));
}

// True if code a precedes code b when +1 (bit clear) wins at the first
// differing spin.
bool precedes(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint32_t lowest = diff & (~diff + 1);
  return (a & lowest) == 0;
}

SpinConfiguration decode(std::uint32_t code, std::size_t n) {
  SpinConfiguration config;
  config.spins.resize(n);
  for (std::size_t i = 0; i < n; ++i) config.spins[i] = (code >> i) & 1u ? -1 : 1;
  return config;
}

}  // namespace

void IsingProblem::validate() const {
  if (j.rows() != j.cols()) throw InvalidArgument("IsingProblem: J must be square");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidArgument("IsingProblem: kappa must be >= 0");
  for (Eigen::Index i = 0; i < j.rows(); ++i) {
    if (j(i, i) != 0.0) throw InvalidArgument("IsingProblem: J must have a zero diagonal");
    for (Eigen::Index k = i + 1; k < j.cols(); ++k) {
      if (!std::isfinite(j(i, k))) throw InvalidArgument("IsingProblem: J must be finite");
      if (j(i, k) != j(k, i)) throw InvalidArgument("IsingProblem: J must be symmetric");
    }
  }
}

double ising_energy(const IsingProblem& problem, const SpinConfiguration& config) {
  require_size(problem, config.size(), "ising_energy");
  const auto n = static_cast<Eigen::Index>(config.size());
  double energy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k)
      energy -= problem.j(i, k) * config.spins[static_cast<std::size_t>(i)] *
                config.spins[static_cast<std::size_t>(k)];
  return energy;
}

std::vector<PolarizationState> coupled_roundtrip(std::span<const PolarizationState> states,
                                                 const IsingProblem& problem, double pump,
                                                 const CavityParams& cav, const Medium& medium) {
  require_size(problem, states.size(), "coupled_roundtrip");
  if (states.empty()) throw InvalidArgument("coupled_roundtrip: need at least one mode");
  if (!(pump > 0.0)) throw InvalidArgument("coupled_roundtrip: pump must be positive");

  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::VectorXcd rotated(n);
  for (Eigen::Index i = 0; i < n; ++i)
    rotated(i) = self_rotated_vertical(states[static_cast<std::size_t>(i)].e_v(), pump, medium);

  const cd feedback = std::sqrt(cav.eta) * std::polar(1.0, cav.psi);
  const Eigen::VectorXcd mixed = rotated + problem.kappa * (problem.j.cast<cd>() * rotated);

  std::vector<PolarizationState> out;
  out.reserve(states.size());
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(pump, feedback * mixed(i));
  return out;
}

SolveResult solve(const IsingProblem& problem, double pump, const CavityParams& cav,
                  const Medium& medium, int restarts, std::uint64_t rng_seed) {
  problem.validate();
  cav.validate();
  if (restarts < 1) throw InvalidArgument("solve: restarts must be >= 1");
  if (problem.size() == 0) throw InvalidArgument("solve: empty problem");
  if (!(pump > 0.0)) throw InvalidArgument("solve: pump must be positive");

  const auto n = static_cast<Eigen::Index>(problem.size());
  const Eigen::MatrixXcd coupling = problem.kappa * problem.j.cast<cd>();
  const cd feedback = std::sqrt(cav.eta) * std::polar(1.0, cav.psi);

  SolveResult result;
  result.restarts.resize(static_cast<std::size_t>(restarts));
  parallel_for(result.restarts.size(), [&](std::size_t r) {
    const std::uint64_t seed = rng_seed + r;
    Rng rng(seed);
    Eigen::VectorXcd e_v(n);
    for (Eigen::Index i = 0; i < n; ++i) e_v(i) = complex_gaussian(rng, cav.noise_sigma);

    Eigen::VectorXcd rotated(n);
    Eigen::VectorXcd next(n);
    RestartRecord rec;
    rec.seed = seed;
    int quiet = 0;
    int pass = 0;
    while (pass < cav.max_iters) {
      for (Eigen::Index i = 0; i < n; ++i) rotated(i) = self_rotated_vertical(e_v(i), pump, medium);
      next.noalias() = rotated + coupling * rotated;
      next *= feedback;
      if (cav.noise_mode == NoiseMode::kPerPass)
        for (Eigen::Index i = 0; i < n; ++i) next(i) += complex_gaussian(rng, cav.noise_sigma);
      ++pass;
      quiet = (next - e_v).cwiseAbs().maxCoeff() < cav.conv_tol ? quiet + 1 : 0;
      e_v = next;
      if (quiet >= cav.conv_window) {
        rec.converged = true;
        break;
      }
    }
    rec.iterations = pass;
    rec.spins.spins.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double im = e_v(i).imag();
      if (std::abs(im) < cav.conv_tol) ++rec.undecided_modes;
      rec.spins.spins[static_cast<std::size_t>(i)] = im < 0.0 ? -1 : 1;
    }
    rec.energy = ising_energy(problem, rec.spins);
    result.restarts[r] = std::move(rec);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < result.restarts.size(); ++r)
    if (result.restarts[r].energy < result.restarts[best].energy) best = r;
  result.best = result.restarts[best].spins;
  result.best_energy = result.restarts[best].energy;
  return result;
}

GroundState brute_force_ground_state(const IsingProblem& problem) {
  problem.validate();
  const std::size_t n = problem.size();
  if (n > kMaxEnumerationSize)
    throw TooLarge("brute_force_ground_state: N = " + std::to_string(n) + " exceeds " +
                   std::to_string(kMaxEnumerationSize));
  if (n == 0) return {};

  // Gray-code walk from all spins +1; local fields make each flip O(N).
  std::vector<int> spins(n, 1);
  Eigen::VectorXd field = problem.j.rowwise().sum();
  double energy = -0.5 * field.sum();
  const double tie_tol = 1e-9 * (1.0 + problem.j.cwiseAbs().sum());

  std::uint32_t code = 0;
  std::uint32_t best_code = 0;
  double best_energy = energy;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto flip = static_cast<Eigen::Index>(std::countr_zero(step));
    const int s = spins[static_cast<std::size_t>(flip)];
    energy += 2.0 * s * field(flip);
    field -= 2.0 * s * problem.j.col(flip);
    spins[static_cast<std::size_t>(flip)] = -s;
    code ^= std::uint32_t{1} << flip;

    if (energy < best_energy - tie_tol) {
      best_energy = energy;
      best_code = code;
    } else if (energy <= best_energy + tie_tol && precedes(code, best_code)) {
      best_energy = std::min(best_energy, energy);
      best_code = code;
    }
  }

  GroundState out;
  out.config = decode(best_code, n);
  out.energy = ising_energy(problem, out.config);
  return out;
}

IsingProblem read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1;
  IsingProblem problem;
  const auto fail = [&](const std::string& what) {
    throw ParseError("ising instance line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string probe;
    if (!(fields >> probe)) continue;
    fields.clear();
    fields.str(line);

    if (n < 0) {
      if (!(fields >> n) || n < 1) fail("expected a positive spin count");
      if (std::string extra; fields >> extra) fail("unexpected text after the spin count");
      problem.j = Eigen::MatrixXd::Zero(n, n);
      continue;
    }
    long long i = 0, k = 0;
    double value = 0.0;
    if (!(fields >> i >> k >> value)) fail("expected 'i k J_ik'");
    if (std::string extra; fields >> extra) fail("unexpected text after the coupling");
    if (i < 0 || k < 0 || i >= n || k >= n) fail("index out of range");
    if (i == k) fail("self-coupling is not allowed");
    if (!std::isfinite(value)) fail("coupling must be finite");
    const double existing = problem.j(i, k);
    if (existing != 0.0 && existing != value) fail("conflicting duplicate edge");
    problem.j(i, k) = value;
    problem.j(k, i) = value;
  }
  if (n < 0) throw ParseError("ising instance: missing spin count");
  return problem;
}

void write_instance(std::ostream& out, const IsingProblem& problem) {
  const auto n = problem.j.rows();
  out << n << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k)
      if (problem.j(i, k) != 0.0) out << i << ' ' << k << ' ' << problem.j(i, k) << '\n';
  out.precision(old_precision);
}

IsingProblem from_maxcut(const Eigen::MatrixXd& weights, double kappa) {
  IsingProblem problem{-weights, kappa};
  problem.validate();
  return problem;
}

}  // namespace psr
