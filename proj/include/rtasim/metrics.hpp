#pragma once

#include <cstdint>

#include "rtasim/config.hpp"

namespace rtasim {

struct ConfidenceInterval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a Bernoulli proportion; well behaved at the
// rare-event counts this simulator lives in (including zero successes).
ConfidenceInterval wilson_interval(std::uint64_t successes,
                                   std::uint64_t trials, double z = 1.959963984540054);

struct MetricsAccumulator {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t slots = 0;
  std::uint64_t rta_ru_slot_sum = 0;  // sum over slots of allocated RTA RUs
};

// Fraction of the F-RU channel left to non-RTA traffic, averaged per slot:
// 1 - rta_ru_slot_sum / (slots * F).
double nonrta_share(const MetricsAccumulator& acc, std::uint32_t total_rus);

struct RunResult {
  SimConfig config;
  std::uint64_t seed = 0;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;  // still queued at the horizon (censored)
  std::uint64_t slots = 0;
  std::uint64_t rta_ru_slot_sum = 0;
  double plr = 0.0;  // dropped / (delivered + dropped); 0 when no packets
  ConfidenceInterval plr_ci{0.0, 1.0};
  double nonrta_share = 0.0;
  ConfidenceInterval share_ci{0.0, 1.0};
};

}  // namespace rtasim
