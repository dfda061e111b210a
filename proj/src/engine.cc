#include "rtasim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "rtasim/channel.hpp"
#include "rtasim/scheduler.hpp"
#include "rtasim/station.hpp"

namespace rtasim {

namespace {

// First slot in which an arrival at time t may transmit: the earliest slot
// whose start is at or after t. Float-guarded so a boundary arrival k*T maps
// to slot k exactly.
std::uint64_t eligible_slot(double t, double slot_duration) {
  if (t <= 0.0) return 0;
  auto n = static_cast<std::uint64_t>(std::ceil(t / slot_duration));
  while (n > 0 && (static_cast<double>(n) - 1.0) * slot_duration >= t) --n;
  while (static_cast<double>(n) * slot_duration < t) ++n;
  return n;
}

void check_schedule_invariants(const SimConfig& cfg, const SlotSchedule& sched,
                               std::span<const Transmission> txs,
                               std::uint32_t ngra_capacity) {
  if (sched.rta_ru_count() > cfg.max_rta_rus)
    throw ContractViolation("schedule exceeds max_rta_rus");
  for (const RuAllocation& ru : sched.rus()) {
    if (ru.kind == RuKind::RandomAccess && !ru.assigned.empty())
      throw ContractViolation("RA RU with deterministic assignment");
    if (ru.kind == RuKind::Deterministic) {
      if (cfg.algorithm == Algorithm::Ncra && ru.assigned.size() > 1)
        throw ContractViolation("NCRA DA RU hosts more than one STA");
      if (cfg.algorithm == Algorithm::Ngra &&
          ru.assigned.size() > ngra_capacity)
        throw ContractViolation("NGRA DA RU exceeds capacity");
    }
  }
  // NCRA resolution is collision-free by construction: a DA RU can carry at
  // most its single owner's copy.
  if (cfg.algorithm == Algorithm::Ncra) {
    std::vector<std::uint32_t> occupancy(sched.rta_ru_count(), 0);
    for (const Transmission& tx : txs) occupancy[tx.ru] += 1;
    for (RuIndex ru = 0; ru < sched.rta_ru_count(); ++ru)
      if (!sched.is_ra(ru) && occupancy[ru] > 1)
        throw ContractViolation("collision in an NCRA DA RU");
  }
}

struct SlotLoop {
  const SimConfig& cfg;
  const RunOptions& options;

  RngStream channel_stream;
  RngStream scheduler_stream;
  std::vector<RngStream> arrival_streams;
  std::vector<RngStream> choice_streams;
  RandomPicks scheduler_random;
  std::vector<RandomPicks> station_random;

  std::unique_ptr<Scheduler> scheduler;
  ChannelModel channel;
  std::vector<Station> stations;

  MetricsAccumulator acc;
  PacketId next_packet_id = 0;

  std::vector<Transmission> txs;
  std::vector<RuObservation> observations;
  std::vector<RuIndex> ra_view;
  std::vector<std::vector<RuIndex>> da_view;  // per STA, ascending RUs
  SlotTraceRecord trace_record;

  explicit SlotLoop(const SimConfig& c, const RunOptions& opt)
      : cfg(c),
        options(opt),
        channel_stream(derive_seed(c.seed, StreamDomain::Channel)),
        scheduler_stream(derive_seed(c.seed, StreamDomain::Scheduler)),
        scheduler_random(scheduler_stream),
        scheduler(make_scheduler(c)),
        channel(c.noise_prob) {
    arrival_streams.reserve(cfg.n_stas);
    choice_streams.reserve(cfg.n_stas);
    stations.reserve(cfg.n_stas);
    for (StaId s = 0; s < cfg.n_stas; ++s) {
      arrival_streams.emplace_back(
          derive_seed(cfg.seed, StreamDomain::Arrivals, s));
      choice_streams.emplace_back(
          derive_seed(cfg.seed, StreamDomain::StationChoice, s));
      stations.emplace_back(s, cfg.arrival_rate, cfg.delay_budget);
    }
    for (StaId s = 0; s < cfg.n_stas; ++s)
      station_random.emplace_back(choice_streams[s]);
    if (options.arrivals) {
      if (options.arrivals->per_sta.size() > stations.size())
        throw std::invalid_argument("arrival plan has more STAs than config");
      for (std::size_t s = 0; s < options.arrivals->per_sta.size(); ++s)
        stations[s].force_arrivals(options.arrivals->per_sta[s]);
    }
    da_view.resize(cfg.n_stas);
  }

  PickSource& scheduler_picks() {
    if (options.picks && options.picks->scheduler)
      return *options.picks->scheduler;
    return scheduler_random;
  }

  PickSource& station_picks(StaId s) {
    if (options.picks && s < options.picks->stations.size() &&
        options.picks->stations[s])
      return *options.picks->stations[s];
    return station_random[s];
  }

  bool horizon_reached(std::uint64_t slot) const {
    if (cfg.horizon.slots > 0 && slot >= cfg.horizon.slots) return true;
    if (cfg.horizon.packets > 0 && acc.generated >= cfg.horizon.packets)
      return true;
    return false;
  }

  bool all_queues_empty() const {
    for (const Station& sta : stations)
      if (sta.has_data()) return false;
    return true;
  }

  std::uint64_t in_flight() const {
    std::uint64_t n = 0;
    for (const Station& sta : stations) n += sta.queue().size();
    return n;
  }

  void run_loop() {
    const double T = cfg.slot_duration;
    const bool skip_enabled = options.skip_idle_slots && !options.trace;
    for (StaId s = 0; s < cfg.n_stas; ++s)
      stations[s].prime(arrival_streams[s]);

    std::uint64_t slot = 0;
    while (!horizon_reached(slot)) {
      if (skip_enabled && scheduler->mode() == SchedulerMode::Waiting &&
          all_queues_empty()) {
        double next = std::numeric_limits<double>::infinity();
        for (const Station& sta : stations)
          next = std::min(next, sta.next_arrival());
        if (std::isinf(next)) {
          // Nothing will ever arrive again. With a slot horizon the rest of
          // the run is waiting slots; otherwise the run is over.
          if (cfg.horizon.slots > 0) {
            const std::uint64_t rest = cfg.horizon.slots - slot;
            acc.slots += rest;
            acc.rta_ru_slot_sum += rest;
          }
          return;
        }
        std::uint64_t target = std::max(eligible_slot(next, T), slot);
        if (cfg.horizon.slots > 0)
          target = std::min(target, cfg.horizon.slots);
        if (target > slot) {
          const std::uint64_t skipped = target - slot;
          acc.slots += skipped;
          acc.rta_ru_slot_sum += skipped;  // waiting slots hold one RA RU
          slot = target;
          continue;
        }
      }
      step(slot);
      ++slot;
    }
  }

  void step(std::uint64_t slot) {
    const double t0 = static_cast<double>(slot) * cfg.slot_duration;
    const double t1 = static_cast<double>(slot + 1) * cfg.slot_duration;
    const SchedulerMode mode = scheduler->mode();
    const SlotSchedule& sched = scheduler->next_schedule(slot, scheduler_picks());

    for (StaId s = 0; s < cfg.n_stas; ++s)
      acc.generated += stations[s].generate_arrivals(t0, arrival_streams[s],
                                                     next_packet_id);
    for (Station& sta : stations) acc.dropped += sta.expire_deadlines(t1);

    // Per-slot station views of the schedule.
    ra_view.clear();
    for (StaId s = 0; s < cfg.n_stas; ++s) da_view[s].clear();
    for (RuIndex ru = 0; ru < sched.rta_ru_count(); ++ru) {
      const RuAllocation& alloc = sched.ru(ru);
      if (alloc.kind == RuKind::RandomAccess) {
        ra_view.push_back(ru);
      } else {
        for (StaId s : alloc.assigned) da_view[s].push_back(ru);
      }
    }

    txs.clear();
    for (StaId s = 0; s < cfg.n_stas; ++s)
      stations[s].select_transmissions(ra_view, da_view[s], cfg.copies,
                                       station_picks(s), txs);

    if (options.check_invariants) {
      std::uint32_t cap = 0;
      if (auto* ngra = dynamic_cast<const NgraScheduler*>(scheduler.get()))
        cap = ngra->capacity();
      check_schedule_invariants(cfg, sched, txs, cap);
    }

    channel.resolve_slot(txs, sched, channel_stream, observations);

    for (const RuObservation& obs : observations)
      if (obs.outcome == RuOutcome::Success)
        if (stations[obs.sta].deliver(obs.packet, t1)) acc.delivered += 1;

    scheduler->observe(observations);

    acc.slots += 1;
    acc.rta_ru_slot_sum += sched.rta_ru_count();

    if (options.check_invariants &&
        acc.generated != acc.delivered + acc.dropped + in_flight())
      throw ContractViolation("packet conservation violated");

    if (options.trace) {
      trace_record.slot = slot;
      trace_record.mode = mode;
      trace_record.rus.clear();
      for (RuIndex ru = 0; ru < sched.rta_ru_count(); ++ru) {
        TraceRu t;
        t.kind = sched.ru(ru).kind;
        t.assigned = sched.ru(ru).assigned;
        t.outcome = observations[ru].outcome;
        if (t.outcome == RuOutcome::Success) {
          t.success_sta = observations[ru].sta;
          t.success_packet = observations[ru].packet;
        }
        trace_record.rus.push_back(std::move(t));
      }
      options.trace->on_slot(trace_record);
    }
  }
};

}  // namespace

RunResult run(const SimConfig& cfg, const RunOptions& options) {
  {
    auto errors = validate_config(cfg);
    // A scripted arrival plan substitutes for a Poisson source, so the
    // packet-horizon-needs-traffic check does not apply to it.
    if (options.arrivals) {
      std::erase_if(errors, [](const std::string& e) {
        return e.starts_with("horizon: a pure packet horizon");
      });
    }
    if (!errors.empty()) {
      std::string msg = "invalid config:";
      for (const std::string& e : errors) msg += " [" + e + "]";
      throw std::invalid_argument(msg);
    }
  }

  SlotLoop loop(cfg, options);
  try {
    loop.run_loop();
  } catch (const ContractViolation& e) {
    throw ContractViolation(std::string(e.what()) + " (slot " +
                            std::to_string(loop.acc.slots) + ")");
  }

  RunResult r;
  r.config = cfg;
  r.seed = cfg.seed;
  r.generated = loop.acc.generated;
  r.delivered = loop.acc.delivered;
  r.dropped = loop.acc.dropped;
  r.in_flight = loop.in_flight();
  r.slots = loop.acc.slots;
  r.rta_ru_slot_sum = loop.acc.rta_ru_slot_sum;
  if (r.generated != r.delivered + r.dropped + r.in_flight)
    throw ContractViolation("packet conservation violated at horizon");

  const std::uint64_t decided = r.delivered + r.dropped;
  r.plr = decided ? static_cast<double>(r.dropped) / decided : 0.0;
  r.plr_ci = wilson_interval(r.dropped, decided);
  if (r.slots > 0) {
    r.nonrta_share = nonrta_share(loop.acc, cfg.total_rus);
    r.share_ci = {r.nonrta_share, r.nonrta_share};
  }
  return r;
}

RunResult run_replications(const SimConfig& cfg, std::uint32_t n_reps,
                           std::uint64_t base_seed, std::uint32_t jobs) {
  if (n_reps < 1) throw std::invalid_argument("n_reps must be >= 1");
  std::vector<RunResult> results(n_reps);

  jobs = std::max<std::uint32_t>(1, std::min(jobs, n_reps));
  if (jobs == 1) {
    for (std::uint32_t i = 0; i < n_reps; ++i) {
      SimConfig c = cfg;
      c.seed = base_seed + i;
      results[i] = run(c);
    }
  } else {
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::uint32_t i = next.fetch_add(1);
        if (i >= n_reps) return;
        try {
          SimConfig c = cfg;
          c.seed = base_seed + i;
          results[i] = run(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::uint32_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  RunResult agg;
  agg.config = cfg;
  agg.config.seed = base_seed;
  agg.seed = base_seed;
  for (const RunResult& r : results) {
    agg.generated += r.generated;
    agg.delivered += r.delivered;
    agg.dropped += r.dropped;
    agg.in_flight += r.in_flight;
    agg.slots += r.slots;
    agg.rta_ru_slot_sum += r.rta_ru_slot_sum;
  }
  const std::uint64_t decided = agg.delivered + agg.dropped;
  agg.plr = decided ? static_cast<double>(agg.dropped) / decided : 0.0;
  agg.plr_ci = wilson_interval(agg.dropped, decided);

  MetricsAccumulator pooled;
  pooled.slots = agg.slots;
  pooled.rta_ru_slot_sum = agg.rta_ru_slot_sum;
  agg.nonrta_share = agg.slots ? nonrta_share(pooled, cfg.total_rus) : 0.0;
  if (n_reps == 1) {
    agg.share_ci = {agg.nonrta_share, agg.nonrta_share};
  } else {
    double mean = 0.0;
    for (const RunResult& r : results) mean += r.nonrta_share;
    mean /= n_reps;
    double var = 0.0;
    for (const RunResult& r : results) {
      const double d = r.nonrta_share - mean;
      var += d * d;
    }
    var /= (n_reps - 1);
    const double half = 1.959963984540054 * std::sqrt(var / n_reps);
    agg.share_ci = {agg.nonrta_share - half, agg.nonrta_share + half};
  }
  return agg;
}

}  // namespace rtasim
