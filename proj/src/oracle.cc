#include "rtasim/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "rtasim/scheduler.hpp"

namespace rtasim {

double solo_sta_plr(double p, std::uint32_t copies, std::uint32_t attempts) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p in [0,1]");
  if (copies < 1) throw std::invalid_argument("copies >= 1");
  return std::pow(std::pow(p, static_cast<double>(copies)),
                  static_cast<double>(attempts));
}

namespace {

// Replays a recorded pick sequence and records any picks past its end
// (choosing branch 0), so a caller can walk all pick sequences odometer
// style without knowing what the consumer will ask for.
class ReplayPicks final : public PickSource {
 public:
  explicit ReplayPicks(std::vector<std::pair<std::uint32_t, std::uint32_t>>& s)
      : script_(s) {}

  std::uint32_t pick(std::uint32_t bound) override {
    if (pos_ < script_.size()) {
      if (script_[pos_].first != bound)
        throw ContractViolation("oracle replay: nondeterministic pick bounds");
      return script_[pos_++].second;
    }
    script_.emplace_back(bound, 0);
    ++pos_;
    return 0;
  }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>>& script_;
  std::size_t pos_ = 0;
};

struct ScheduleBranch {
  std::unique_ptr<Scheduler> sched;  // after building this slot's schedule
  double prob = 1.0;
};

// All schedules the scheduler can produce this slot, with probabilities;
// branches with identical RU contents are merged.
std::vector<ScheduleBranch> enumerate_schedules(const Scheduler& base,
                                                std::uint64_t slot) {
  std::vector<ScheduleBranch> merged;
  std::map<std::vector<std::uint64_t>, std::size_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> script;

  for (;;) {
    std::unique_ptr<Scheduler> clone = base.clone();
    ReplayPicks picks(script);
    const SlotSchedule& sched = clone->next_schedule(slot, picks);

    double prob = 1.0;
    for (const auto& [bound, _] : script) prob /= bound;

    // Key = RU contents (assignment order inside an RU is irrelevant).
    std::vector<std::uint64_t> key;
    for (const RuAllocation& ru : sched.rus()) {
      key.push_back(ru.kind == RuKind::RandomAccess ? ~0ULL : ru.assigned.size());
      std::vector<StaId> stas = ru.assigned;
      std::sort(stas.begin(), stas.end());
      for (StaId s : stas) key.push_back(s);
    }
    auto [it, inserted] = index.try_emplace(key, merged.size());
    if (inserted) {
      merged.push_back(ScheduleBranch{std::move(clone), prob});
    } else {
      merged[it->second].prob += prob;
    }

    // Odometer: advance the last pick that still has branches left.
    while (!script.empty() &&
           script.back().second + 1 >= script.back().first)
      script.pop_back();
    if (script.empty()) break;
    script.back().second += 1;
  }
  return merged;
}

// Emits every `take`-subset of [0, n) in lexicographic order.
class CombinationWalker {
 public:
  CombinationWalker(std::uint32_t n, std::uint32_t take) : n_(n) {
    for (std::uint32_t i = 0; i < take; ++i) idx_.push_back(i);
    done_ = take > n;
  }
  bool done() const { return done_; }
  const std::vector<std::uint32_t>& current() const { return idx_; }
  void next() {
    if (idx_.empty()) {
      done_ = true;
      return;
    }
    std::size_t i = idx_.size();
    while (i-- > 0) {
      if (idx_[i] + (idx_.size() - i) < n_) {
        ++idx_[i];
        for (std::size_t j = i + 1; j < idx_.size(); ++j)
          idx_[j] = idx_[j - 1] + 1;
        return;
      }
    }
    done_ = true;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> idx_;
  bool done_ = false;
};

double binomial(std::uint32_t n, std::uint32_t k) {
  double r = 1.0;
  for (std::uint32_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

struct OracleState {
  double prob = 0.0;
  std::unique_ptr<Scheduler> sched;      // post-observe state
  std::vector<std::uint32_t> consumed;   // per STA: plan packets gone
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
};

using StateMap = std::map<std::vector<std::uint64_t>, OracleState>;

std::vector<std::uint64_t> state_key(const OracleState& s) {
  std::vector<std::uint64_t> key;
  s.sched->encode_state(key);
  key.push_back(~0ULL);
  for (std::uint32_t c : s.consumed) key.push_back(c);
  key.push_back(s.delivered);
  key.push_back(s.dropped);
  return key;
}

void merge_state(StateMap& map, OracleState&& s) {
  auto key = state_key(s);
  auto it = map.find(key);
  if (it == map.end()) {
    map.emplace(std::move(key), std::move(s));
  } else {
    it->second.prob += s.prob;
  }
}

struct Expander {
  const SimConfig& cfg;
  const std::vector<std::vector<double>>& plan;
  std::vector<std::vector<std::uint32_t>> arrived_by_slot;  // [slot][sta]
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes;

  // Per-expansion scratch describing the current slot of one state.
  struct StaSlot {
    bool has_data = false;
    std::vector<RuIndex> da;               // plus RA set below
    std::vector<std::vector<RuIndex>> options;  // candidate RU sets
    double option_prob = 1.0;
  };

  void expand_state(const OracleState& state, std::uint64_t slot,
                    StateMap& next) {
    const double T = cfg.slot_duration;
    const double t1 = static_cast<double>(slot + 1) * T;

    for (const ScheduleBranch& branch :
         enumerate_schedules(*state.sched, slot)) {
      const SlotSchedule& sched = branch.sched->last_schedule();

      // Arrivals and the expiry sweep are deterministic per state.
      std::vector<std::uint32_t> consumed = state.consumed;
      std::uint64_t dropped = state.dropped;
      for (StaId s = 0; s < cfg.n_stas; ++s) {
        const std::uint32_t arrived = arrived_by_slot[slot][s];
        while (consumed[s] < arrived &&
               plan[s][consumed[s]] + cfg.delay_budget < t1) {
          ++consumed[s];
          ++dropped;
        }
      }

      // Station transmission options.
      std::vector<RuIndex> ra;
      for (RuIndex ru = 0; ru < sched.rta_ru_count(); ++ru)
        if (sched.is_ra(ru)) ra.push_back(ru);

      std::vector<StaSlot> stas(cfg.n_stas);
      for (StaId s = 0; s < cfg.n_stas; ++s) {
        StaSlot& st = stas[s];
        st.has_data = consumed[s] < arrived_by_slot[slot][s];
        if (!st.has_data) continue;
        for (RuIndex ru = 0; ru < sched.rta_ru_count(); ++ru)
          if (!sched.is_ra(ru))
            for (StaId a : sched.ru(ru).assigned)
              if (a == s) st.da.push_back(ru);
        if (!st.da.empty()) {
          const std::size_t n = std::min<std::size_t>(cfg.copies, st.da.size());
          st.options.push_back(
              std::vector<RuIndex>(st.da.begin(), st.da.begin() + n));
          st.option_prob = 1.0;
        } else if (!ra.empty()) {
          const auto take = static_cast<std::uint32_t>(
              std::min<std::size_t>(cfg.copies, ra.size()));
          if (take == ra.size()) {
            st.options.push_back(ra);
            st.option_prob = 1.0;
          } else {
            for (CombinationWalker walk(static_cast<std::uint32_t>(ra.size()),
                                        take);
                 !walk.done(); walk.next()) {
              std::vector<RuIndex> rus;
              for (std::uint32_t i : walk.current()) rus.push_back(ra[i]);
              st.options.push_back(std::move(rus));
            }
            st.option_prob =
                1.0 / binomial(static_cast<std::uint32_t>(ra.size()), take);
          }
        } else {
          st.has_data = false;  // data but no way to transmit this slot
        }
      }

      expand_choices(state, branch, sched, stas, consumed, dropped, slot, t1,
                     next);
    }
  }

  void expand_choices(const OracleState& state, const ScheduleBranch& branch,
                      const SlotSchedule& sched, std::vector<StaSlot>& stas,
                      const std::vector<std::uint32_t>& consumed,
                      std::uint64_t dropped, std::uint64_t slot, double t1,
                      StateMap& next) {
    // DFS over each backlogged station's RU-set options, then over noise.
    std::vector<std::size_t> option_index(cfg.n_stas, 0);
    std::vector<StaId> active;
    for (StaId s = 0; s < cfg.n_stas; ++s)
      if (stas[s].has_data) active.push_back(s);

    const std::uint32_t m = sched.rta_ru_count();
    std::vector<std::uint32_t> occupancy(m);
    std::vector<StaId> solo_sta(m);

    for (;;) {
      double choice_prob = 1.0;
      std::fill(occupancy.begin(), occupancy.end(), 0);
      for (StaId s : active) {
        choice_prob *= stas[s].option_prob;
        for (RuIndex ru : stas[s].options[option_index[s]]) {
          occupancy[ru] += 1;
          solo_sta[ru] = s;
        }
      }

      expand_noise(state, branch, sched, occupancy, solo_sta, consumed,
                   dropped, branch.prob * choice_prob, slot, t1, next);

      // Advance the mixed-radix option counter.
      std::size_t i = 0;
      for (; i < active.size(); ++i) {
        StaId s = active[i];
        if (++option_index[s] < stas[s].options.size()) break;
        option_index[s] = 0;
      }
      if (i == active.size()) break;
    }
  }

  void expand_noise(const OracleState& state, const ScheduleBranch& branch,
                    const SlotSchedule& sched,
                    const std::vector<std::uint32_t>& occupancy,
                    const std::vector<StaId>& solo_sta,
                    const std::vector<std::uint32_t>& consumed,
                    std::uint64_t dropped, double prob, std::uint64_t slot,
                    double t1, StateMap& next) {
    const std::uint32_t m = sched.rta_ru_count();
    std::vector<RuIndex> solo_rus;
    for (RuIndex ru = 0; ru < m; ++ru)
      if (occupancy[ru] == 1) solo_rus.push_back(ru);

    const double p = cfg.noise_prob;
    std::vector<bool> noised(solo_rus.size(), false);

    // Walk all noise patterns over solo RUs (one branch when p is 0 or 1).
    for (;;) {
      double noise_prob_total = 1.0;
      bool valid = true;
      for (std::size_t i = 0; i < solo_rus.size(); ++i) {
        const double f = noised[i] ? p : 1.0 - p;
        if (f == 0.0) {
          valid = false;
          break;
        }
        noise_prob_total *= f;
      }

      if (valid) {
        if (++nodes > max_nodes)
          throw std::runtime_error("oracle: state-space blowup guard hit");
        finish_leaf(state, branch, sched, occupancy, solo_sta, solo_rus,
                    noised, consumed, dropped, prob * noise_prob_total, slot,
                    t1, next);
      }

      std::size_t i = 0;
      for (; i < noised.size(); ++i) {
        if (!noised[i]) {
          noised[i] = true;
          break;
        }
        noised[i] = false;
      }
      if (i == noised.size()) break;
    }
  }

  void finish_leaf(const OracleState& state, const ScheduleBranch& branch,
                   const SlotSchedule& sched,
                   const std::vector<std::uint32_t>& occupancy,
                   const std::vector<StaId>& solo_sta,
                   const std::vector<RuIndex>& solo_rus,
                   const std::vector<bool>& noised,
                   const std::vector<std::uint32_t>& consumed,
                   std::uint64_t dropped, double prob, std::uint64_t slot,
                   double t1, StateMap& next) {
    (void)slot;
    (void)t1;
    const std::uint32_t m = sched.rta_ru_count();
    std::vector<RuObservation> obs(m);
    std::vector<bool> sta_delivered(cfg.n_stas, false);

    std::vector<std::size_t> solo_pos(m, 0);
    for (std::size_t i = 0; i < solo_rus.size(); ++i) solo_pos[solo_rus[i]] = i;

    for (RuIndex ru = 0; ru < m; ++ru) {
      obs[ru].ru = ru;
      if (occupancy[ru] == 0) {
        obs[ru].outcome = RuOutcome::Idle;
      } else if (occupancy[ru] >= 2) {
        obs[ru].outcome = RuOutcome::Failure;
      } else if (noised[solo_pos[ru]]) {
        obs[ru].outcome = RuOutcome::Failure;
      } else {
        obs[ru].outcome = RuOutcome::Success;
        obs[ru].sta = solo_sta[ru];
        sta_delivered[solo_sta[ru]] = true;
      }
    }

    OracleState out;
    out.prob = state.prob * prob;
    out.consumed = consumed;
    out.delivered = state.delivered;
    out.dropped = dropped;
    for (StaId s = 0; s < cfg.n_stas; ++s) {
      if (sta_delivered[s]) {
        out.consumed[s] += 1;  // head-of-line packet leaves the queue
        out.delivered += 1;
      }
    }
    out.sched = branch.sched->clone();
    out.sched->observe(obs);
    merge_state(next, std::move(out));
  }
};

}  // namespace

OutcomeDistribution exhaustive_small_instance(const SimConfig& cfg,
                                              const ArrivalPlan& plan,
                                              std::uint32_t depth_slots,
                                              const OracleLimits& limits) {
  if (cfg.arrival_rate != 0.0)
    throw std::invalid_argument("oracle: arrival_rate must be 0 (plan only)");
  if (plan.per_sta.size() > cfg.n_stas)
    throw std::invalid_argument("oracle: plan has more STAs than config");

  std::vector<std::vector<double>> full_plan = plan.per_sta;
  full_plan.resize(cfg.n_stas);
  Expander expander{cfg, full_plan, {}, 0, limits.max_nodes};

  // Arrivals visible at each slot's start, matching the engine's boundary
  // rule (arrival_time <= slot start).
  expander.arrived_by_slot.assign(depth_slots,
                                  std::vector<std::uint32_t>(cfg.n_stas, 0));
  for (std::uint64_t n = 0; n < depth_slots; ++n) {
    const double t0 = static_cast<double>(n) * cfg.slot_duration;
    for (StaId s = 0; s < cfg.n_stas; ++s) {
      std::uint32_t count = 0;
      while (count < full_plan[s].size() && full_plan[s][count] <= t0) ++count;
      expander.arrived_by_slot[n][s] = count;
    }
  }

  StateMap states;
  OracleState init;
  init.prob = 1.0;
  init.sched = make_scheduler(cfg);
  init.consumed.assign(cfg.n_stas, 0);
  merge_state(states, std::move(init));

  for (std::uint64_t slot = 0; slot < depth_slots; ++slot) {
    StateMap next;
    for (auto& [key, state] : states) expander.expand_state(state, slot, next);
    states = std::move(next);
  }

  OutcomeDistribution dist;
  for (const auto& [key, state] : states)
    dist[{state.delivered, state.dropped}] += state.prob;
  return dist;
}

}  // namespace rtasim
