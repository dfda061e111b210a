#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "rtasim/config.hpp"
#include "rtasim/engine.hpp"

namespace rtasim {

// Probability that a lone station (no collisions possible) loses all
// `copies` duplicates in every one of `attempts` usable slots, when each
// duplicate dies independently with probability p: (p^copies)^attempts.
double solo_sta_plr(double p, std::uint32_t copies, std::uint32_t attempts);

// Exact distribution over (delivered, dropped) totals after `depth_slots`
// slots, keyed by that pair.
using OutcomeDistribution = std::map<std::pair<std::uint64_t, std::uint64_t>, double>;

struct OracleLimits {
  std::uint64_t max_nodes = 10'000'000;
};

// Enumerates the full probability tree of one small scenario: every NGRA
// assignment draw, every station RU choice, and every per-RU noise outcome,
// with exact branch probabilities and state merging at slot boundaries.
//
// Scheduler state machines are reused (their draws run through the pick
// seam and are enumerated branch by branch), but station RU choices are
// expanded directly as uniform f-subsets and the channel outcomes as
// explicit Bernoulli branches — independent of the samplers the simulator
// uses, so biased sampling shows up as a frequency mismatch.
//
// Arrivals come from the plan only; cfg.arrival_rate must be 0. Throws if
// the tree exceeds limits.max_nodes leaves.
OutcomeDistribution exhaustive_small_instance(const SimConfig& cfg,
                                              const ArrivalPlan& plan,
                                              std::uint32_t depth_slots,
                                              const OracleLimits& limits = {});

}  // namespace rtasim
