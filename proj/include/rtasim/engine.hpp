#pragma once

#include <cstdint>
#include <vector>

#include "rtasim/config.hpp"
#include "rtasim/metrics.hpp"
#include "rtasim/picks.hpp"
#include "rtasim/trace.hpp"

namespace rtasim {

// Deterministic extra arrivals, one ascending time list per STA. Merged
// with the Poisson stream (use arrival_rate = 0 for fully scripted runs).
struct ArrivalPlan {
  std::vector<std::vector<double>> per_sta;
};

// Replaces the random pick streams with caller-supplied sources, so tests
// can pin the exact RU choices of stations and the NGRA assignment draws.
struct PickOverrides {
  PickSource* scheduler = nullptr;
  std::vector<PickSource*> stations;  // by STA id; null entries fall back
};

struct RunOptions {
  const ArrivalPlan* arrivals = nullptr;
  const PickOverrides* picks = nullptr;
  TraceSink* trace = nullptr;
  // Jump over stretches of waiting-mode slots in which no station holds or
  // receives data. Exactly equivalent to stepping them (idle slots consume
  // no randomness); disabled automatically while tracing.
  bool skip_idle_slots = true;
  // Re-validate schedule invariants and packet conservation every slot.
  bool check_invariants = false;
};

// Runs one seeded replication of the configured scenario. Throws
// std::invalid_argument on an invalid config and ContractViolation (with
// the slot index attached) if a module breaks its contract mid-run.
RunResult run(const SimConfig& cfg, const RunOptions& options = {});

// Runs n_reps independent replications seeded base_seed, base_seed+1, ...
// and pools their counts. The pooled result is identical whatever `jobs`
// is, because pooling is plain count addition in replication order.
// PLR intervals come from the pooled Bernoulli counts; the non-RTA share
// interval from the across-replication spread (degenerate for n_reps = 1).
RunResult run_replications(const SimConfig& cfg, std::uint32_t n_reps,
                           std::uint64_t base_seed, std::uint32_t jobs = 1);

}  // namespace rtasim
