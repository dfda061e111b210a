#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtasim/engine.hpp"

namespace rtasim::figures {

struct ExpectedRu {
  RuKind kind = RuKind::RandomAccess;
  std::vector<StaId> assigned;  // sorted; deterministic RUs only
  RuOutcome outcome = RuOutcome::Idle;
  std::optional<StaId> success_sta;
};

struct ExpectedSlot {
  SchedulerMode mode = SchedulerMode::Waiting;
  std::vector<ExpectedRu> rus;
};

// One pinned operation example: the scenario, the scripted choice branches,
// and the slot-by-slot trace the simulator must reproduce exactly.
struct FigureScenario {
  std::string name;
  SimConfig cfg;
  ArrivalPlan plan;
  std::vector<std::uint32_t> scheduler_script;
  std::vector<std::vector<std::uint32_t>> station_scripts;
  std::vector<ExpectedSlot> expected;
};

// NUORA with k=4, f=2; STAs 0,1,2 backlogged. Four slots: waiting
// collision, two resolution slots, return to waiting.
FigureScenario fig_nuora();

// NGRA with N=4, k=4, f=2; STAs 0,1,2 backlogged. All-DA first resolution
// slot at capacity 2, then a single re-assigned STA, then waiting.
FigureScenario fig_ngra();

// NCRA with N=5, k=5, f=2; STAs 0,1,3,4 backlogged. Cyclic collision-free
// blocks; the episode ends mid-cycle once nothing failed.
FigureScenario fig_ncra();

// Runs the scenario and diffs the produced trace against the expectation.
// Returns an empty string on an exact match, else a mismatch description.
std::string run_figure_check(const FigureScenario& scenario);

}  // namespace rtasim::figures
