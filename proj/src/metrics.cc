#include "rtasim/metrics.hpp"

#include <cmath>

namespace rtasim {

ConfidenceInterval wilson_interval(std::uint64_t successes,
                                   std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const bool at_floor = successes == 0;
  const bool at_ceiling = successes == trials;
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double spread =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  double lo = at_floor ? 0.0 : center - spread;
  double hi = at_ceiling ? 1.0 : center + spread;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

double nonrta_share(const MetricsAccumulator& acc, std::uint32_t total_rus) {
  const double denom =
      static_cast<double>(acc.slots) * static_cast<double>(total_rus);
  return 1.0 - static_cast<double>(acc.rta_ru_slot_sum) / denom;
}

}  // namespace rtasim
