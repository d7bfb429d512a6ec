#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "psr/cavity.hpp"
#include "psr/polarization.hpp"

namespace psr {

/// H = -sum_{i<k} J_ik s_i s_k with a global machine coupling kappa.
struct IsingProblem {
  Eigen::MatrixXd j;  ///< Symmetric, zero diagonal.
  double kappa = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(j.rows()); }
  /// Throws InvalidArgument on asymmetry, a nonzero diagonal or kappa < 0.
  void validate() const;
};

struct SpinConfiguration {
  std::vector<int> spins;

  [[nodiscard]] std::size_t size() const noexcept { return spins.size(); }
  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
};

/// Throws DimensionMismatch if the sizes differ.
[[nodiscard]] double ising_energy(const IsingProblem& problem, const SpinConfiguration& config);

/// One roundtrip of N modes sharing the vapor cell.
///
/// Every mode self-rotates and is projected on V as in roundtrip(); the
/// vertical fields are then mixed in the feedback arm,
///   E_V,i <- sqrt(eta) e^{i psi} (E_V,i + kappa sum_k J_ik E_V,k),
/// and each mode gets a fresh pump in H.
[[nodiscard]] std::vector<PolarizationState> coupled_roundtrip(
    std::span<const PolarizationState> states, const IsingProblem& problem, double pump,
    const CavityParams& cav, const Medium& medium);

struct RestartRecord {
  SpinConfiguration spins;
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Modes with |Im E_V| < conv_tol at the end; their spin defaults to +1.
  int undecided_modes = 0;
  std::uint64_t seed = 0;
};

struct SolveResult {
  SpinConfiguration best;
  double best_energy = 0.0;
  std::vector<RestartRecord> restarts;
};

/// Coupled dynamics from independent noise seeds (restart r uses
/// rng_seed + r); spins are sign(Im E_V,i) at the end of each run. The
/// lowest-energy restart wins, the earliest on ties.
[[nodiscard]] SolveResult solve(const IsingProblem& problem, double pump, const CavityParams& cav,
                                const Medium& medium, int restarts, std::uint64_t rng_seed);

struct GroundState {
  SpinConfiguration config;
  double energy = 0.0;
};

/// Largest N accepted by brute_force_ground_state.
inline constexpr std::size_t kMaxEnumerationSize = 24;

/// Exhaustive minimum over all 2^N configurations. Degenerate minima are
/// resolved towards +1 at the first differing spin, e.g. (+1, +1) before
/// (-1, -1). Throws TooLarge for N > kMaxEnumerationSize.
[[nodiscard]] GroundState brute_force_ground_state(const IsingProblem& problem);

/// Edge list: first line N, then "i k J_ik" per line (0-based). Blank lines
/// and '#' comments are skipped. Throws ParseError on malformed input.
[[nodiscard]] IsingProblem read_instance(std::istream& in);
void write_instance(std::ostream& out, const IsingProblem& problem);

/// MAX-CUT weights W mapped to couplings J = -W.
[[nodiscard]] IsingProblem from_maxcut(const Eigen::MatrixXd& weights, double kappa);

}  // namespace psr
