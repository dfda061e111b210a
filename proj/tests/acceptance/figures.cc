#include "figures.hpp"

#include <algorithm>
#include <sstream>

namespace rtasim::figures {

namespace {

constexpr RuOutcome I = RuOutcome::Idle;
constexpr RuOutcome S = RuOutcome::Success;
constexpr RuOutcome F = RuOutcome::Failure;

ExpectedRu ra(RuOutcome outcome, std::optional<StaId> sta = {}) {
  return ExpectedRu{RuKind::RandomAccess, {}, outcome, sta};
}

ExpectedRu da(std::vector<StaId> stas, RuOutcome outcome,
              std::optional<StaId> sta = {}) {
  return ExpectedRu{RuKind::Deterministic, std::move(stas), outcome, sta};
}

SimConfig base_cfg(Algorithm algo, std::uint32_t n, std::uint32_t k,
                   std::uint32_t f, std::uint32_t slots) {
  SimConfig cfg;
  cfg.algorithm = algo;
  cfg.n_stas = n;
  cfg.total_rus = k;
  cfg.max_rta_rus = k;
  cfg.copies = f;
  cfg.noise_prob = 0.0;
  cfg.arrival_rate = 0.0;
  cfg.delay_budget = 10 * cfg.slot_duration;
  cfg.horizon = {0, slots};
  return cfg;
}

constexpr SchedulerMode W = SchedulerMode::Waiting;
constexpr SchedulerMode R = SchedulerMode::CollisionResolution;

}  // namespace

FigureScenario fig_nuora() {
  FigureScenario fig;
  fig.name = "NUORA k=4 f=2";
  fig.cfg = base_cfg(Algorithm::Nuora, 3, 4, 2, 4);
  fig.plan.per_sta = {{0.0}, {0.0}, {0.0}};
  fig.scheduler_script = {};
  // Pinned RA choices (partial Fisher-Yates over the ascending RU pool):
  //   slot 1: STA0 -> {1,2}, STA1 -> {1,3}, STA2 -> {1,2}
  //   slot 2: STA0 -> {1,3},               STA2 -> {0,1}
  fig.station_scripts = {
      {1, 2, 1, 1},  // STA0
      {1, 1},        // STA1
      {1, 2, 0, 1},  // STA2
  };
  fig.expected = {
      {W, {ra(F)}},
      {R, {ra(I), ra(F), ra(F), ra(S, 1)}},
      {R, {ra(S, 2), ra(F), ra(I), ra(S, 0)}},
      {W, {ra(I)}},
  };
  return fig;
}

FigureScenario fig_ngra() {
  FigureScenario fig;
  fig.name = "NGRA N=4 k=4 f=2";
  fig.cfg = base_cfg(Algorithm::Ngra, 4, 4, 2, 4);
  fig.plan.per_sta = {{0.0}, {0.0}, {0.0}, {}};
  // Slot 1 (first resolution slot, capacity 2):
  //   shuffle keeps id order (3,2,1), then STA0 -> {0,2}, STA1 -> {1,3},
  //   STA2 -> {0,1}; STA3 takes the two RUs left below capacity: {2,3}.
  // Slot 2: only STA2 still marked; it draws {1,3} from RUs 1..3.
  fig.scheduler_script = {3, 2, 1, 0, 2, 1, 1, 0, 1, 0, 0};
  fig.station_scripts = {{}, {}, {}, {}};
  fig.expected = {
      {W, {ra(F)}},
      {R, {da({0, 2}, F), da({1, 2}, F), da({0, 3}, S, 0), da({1, 3}, S, 1)}},
      {R, {ra(I), da({2}, S, 2), da({}, I), da({2}, S, 2)}},
      {W, {ra(I)}},
  };
  return fig;
}

FigureScenario fig_ncra() {
  FigureScenario fig;
  fig.name = "NCRA N=5 k=5 f=2";
  fig.cfg = base_cfg(Algorithm::Ncra, 5, 5, 2, 4);
  fig.plan.per_sta = {{0.0}, {0.0}, {}, {0.0}, {0.0}};
  fig.scheduler_script = {};
  fig.station_scripts = {{}, {}, {}, {}, {}};
  fig.expected = {
      {W, {ra(F)}},
      {R, {ra(F), da({0}, S, 0), da({0}, S, 0), da({1}, S, 1), da({1}, S, 1)}},
      {R, {ra(S, 4), da({2}, I), da({2}, I), da({3}, S, 3), da({3}, S, 3)}},
      {W, {ra(I)}},
  };
  return fig;
}

std::string run_figure_check(const FigureScenario& scenario) {
  ScriptedPicks scheduler_picks(scenario.scheduler_script);
  std::vector<ScriptedPicks> station_picks;
  station_picks.reserve(scenario.station_scripts.size());
  for (const auto& script : scenario.station_scripts)
    station_picks.emplace_back(script);

  PickOverrides overrides;
  overrides.scheduler = &scheduler_picks;
  for (auto& p : station_picks) overrides.stations.push_back(&p);

  CollectingTraceSink sink;
  RunOptions options;
  options.arrivals = &scenario.plan;
  options.picks = &overrides;
  options.trace = &sink;

  std::ostringstream err;
  run(scenario.cfg, options);

  if (sink.records.size() != scenario.expected.size()) {
    err << scenario.name << ": expected " << scenario.expected.size()
        << " slots, got " << sink.records.size();
    return err.str();
  }
  for (std::size_t slot = 0; slot < scenario.expected.size(); ++slot) {
    const ExpectedSlot& want = scenario.expected[slot];
    const SlotTraceRecord& got = sink.records[slot];
    if (got.mode != want.mode) {
      err << scenario.name << " slot " << slot << ": mode "
          << to_string(got.mode) << ", expected " << to_string(want.mode);
      return err.str();
    }
    if (got.rus.size() != want.rus.size()) {
      err << scenario.name << " slot " << slot << ": " << got.rus.size()
          << " RUs, expected " << want.rus.size();
      return err.str();
    }
    for (std::size_t ru = 0; ru < want.rus.size(); ++ru) {
      const ExpectedRu& w = want.rus[ru];
      const TraceRu& g = got.rus[ru];
      auto where = [&]() -> std::ostringstream& {
        err << scenario.name << " slot " << slot << " RU " << ru << ": ";
        return err;
      };
      if (g.kind != w.kind) {
        where() << "kind mismatch";
        return err.str();
      }
      std::vector<StaId> assigned = g.assigned;
      std::sort(assigned.begin(), assigned.end());
      if (assigned != w.assigned) {
        where() << "assignment mismatch";
        return err.str();
      }
      if (g.outcome != w.outcome) {
        where() << "outcome " << to_string(g.outcome) << ", expected "
                << to_string(w.outcome);
        return err.str();
      }
      if (w.success_sta && g.success_sta != *w.success_sta) {
        where() << "success attributed to STA " << g.success_sta
                << ", expected " << *w.success_sta;
        return err.str();
      }
    }
  }

  if (!scheduler_picks.exhausted())
    return scenario.name + ": scheduler script not fully consumed";
  for (std::size_t s = 0; s < station_picks.size(); ++s)
    if (!station_picks[s].exhausted())
      return scenario.name + ": STA " + std::to_string(s) +
             " script not fully consumed";
  return {};
}

}  // namespace rtasim::figures
