#include "psr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psr/errors.hpp"

namespace psr {

HelicitySequence::HelicitySequence(std::vector<int> values) : values_(std::move(values)) {
  for (const int s : values_)
    if (s != 1 && s != -1)
      throw InvalidArgument("HelicitySequence: value " + std::to_string(s) + " is not +/-1");
}

HelicitySequence HelicitySequence::reversed() const {
  return HelicitySequence(std::vector<int>(values_.rbegin(), values_.rend()));
}

FilteredHelicities filter_helicities(std::span<const int> helicities) {
  FilteredHelicities out;
  std::vector<int> kept;
  kept.reserve(helicities.size());
  for (const int h : helicities) {
    if (h == 0) {
      ++out.zero_count;
    } else if (h == 1 || h == -1) {
      kept.push_back(h);
    } else {
      throw InvalidArgument("filter_helicities: value " + std::to_string(h) + " is not in {-1, 0, 1}");
    }
  }
  out.sequence = HelicitySequence(std::move(kept));
  return out;
}

std::vector<double> autocorrelation(const HelicitySequence& seq, std::size_t max_lag) {
  const std::size_t m_total = seq.size();
  if (max_lag >= m_total)
    throw LagTooLarge("autocorrelation: max_lag " + std::to_string(max_lag) +
                      " must be below the sequence length " + std::to_string(m_total));
  const auto s = seq.values();
  std::vector<double> k(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    long long sum = 0;
    const std::size_t terms = m_total - lag;
    for (std::size_t n = 0; n < terms; ++n) sum += s[n] * s[n + lag];
    k[lag] = static_cast<double>(sum) / static_cast<double>(terms);
  }
  return k;
}

double bernoulli_band(std::size_t m, double confidence_sigmas) {
  if (m == 0) throw InvalidArgument("bernoulli_band: M must be positive");
  return confidence_sigmas / std::sqrt(static_cast<double>(m));
}

double bias(const HelicitySequence& seq) {
  if (seq.empty()) throw InvalidArgument("bias: empty sequence");
  const auto s = seq.values();
  const auto up = std::count(s.begin(), s.end(), 1);
  return static_cast<double>(up) / static_cast<double>(s.size());
}

std::size_t count_outside_band(std::span<const double> k, double half_width) {
  std::size_t outside = 0;
  for (std::size_t lag = 1; lag < k.size(); ++lag)
    if (std::abs(k[lag]) > half_width) ++outside;
  return outside;
}

}  // namespace psr
