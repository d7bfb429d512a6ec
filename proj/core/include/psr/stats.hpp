#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace psr {

/// Ordered outcomes s_n = +/-1 of repeated oscillation events.
class HelicitySequence {
 public:
  HelicitySequence() = default;
  /// Throws InvalidArgument if any value is not exactly +1 or -1.
  explicit HelicitySequence(std::vector<int> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
  [[nodiscard]] std::span<const int> values() const noexcept { return values_; }

  [[nodiscard]] HelicitySequence reversed() const;

 private:
  std::vector<int> values_;
};

/// Splits raw run helicities into the +/-1 sequence and the number of
/// zero-helicity (non-oscillating) runs that were dropped.
struct FilteredHelicities {
  HelicitySequence sequence;
  std::size_t zero_count = 0;
};

/// Throws InvalidArgument for values outside {-1, 0, +1}.
[[nodiscard]] FilteredHelicities filter_helicities(std::span<const int> helicities);

/// K(m) for m = 0..max_lag, averaged over the M - m valid pairs, so K(0) = 1
/// and |K(m)| <= 1. Throws LagTooLarge unless max_lag < M.
[[nodiscard]] std::vector<double> autocorrelation(const HelicitySequence& seq, std::size_t max_lag);

/// confidence_sigmas / sqrt(M): the K(m >= 1) band of an i.i.d. fair coin.
[[nodiscard]] double bernoulli_band(std::size_t m, double confidence_sigmas);

/// Fraction of +1 outcomes. Throws InvalidArgument on an empty sequence.
[[nodiscard]] double bias(const HelicitySequence& seq);

/// Number of lags 1..max_lag whose |K(m)| exceeds half_width.
[[nodiscard]] std::size_t count_outside_band(std::span<const double> k, double half_width);

}  // namespace psr
