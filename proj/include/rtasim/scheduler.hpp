#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rtasim/config.hpp"
#include "rtasim/picks.hpp"
#include "rtasim/types.hpp"

namespace rtasim {

enum class SchedulerMode : std::uint8_t { Waiting, CollisionResolution };

const char* to_string(SchedulerMode m);

// AP-side allocation state machine. The engine drives one instance per run:
// next_schedule() at the top of each slot, observe() with that slot's RU
// outcomes at the bottom. Schedulers see RU observations only — never the
// stations' queues — because the AP does not know who holds data.
//
// All schedulers share the waiting mode: a single RA RU per slot until its
// outcome is a Failure, which signals contention and switches the AP into
// collision resolution. How resolution slots are built and when the AP
// returns to waiting is what distinguishes NUORA, NGRA and NCRA.
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  SchedulerMode mode() const { return mode_; }
  const SlotSchedule& last_schedule() const { return schedule_; }

  const SlotSchedule& next_schedule(std::uint64_t slot_index,
                                    PickSource& picks) {
    schedule_.reset(slot_index);
    if (mode_ == SchedulerMode::Waiting) {
      schedule_.add_ra();
    } else {
      build_resolution_schedule(picks);
    }
    return schedule_;
  }

  void observe(std::span<const RuObservation> obs) {
    if (obs.size() != schedule_.rta_ru_count())
      throw ContractViolation("observation count does not match schedule");
    if (mode_ == SchedulerMode::Waiting) {
      if (obs[0].outcome == RuOutcome::Failure) {
        mode_ = SchedulerMode::CollisionResolution;
        enter_resolution();
      }
    } else {
      on_resolution_observations(obs);
    }
  }

  // Deep copy (used by the exhaustive oracle to branch over futures).
  virtual std::unique_ptr<Scheduler> clone() const = 0;

  // Canonical encoding of the persistent state (mode + algorithm fields),
  // for state merging in the oracle. The schedule buffer is transient and
  // excluded.
  virtual void encode_state(std::vector<std::uint64_t>& out) const = 0;

 protected:
  virtual void build_resolution_schedule(PickSource& picks) = 0;
  virtual void on_resolution_observations(
      std::span<const RuObservation> obs) = 0;
  virtual void enter_resolution() {}

  SchedulerMode mode_ = SchedulerMode::Waiting;
  SlotSchedule schedule_;
};

// NUORA: resolution slots open all k RUs for random access; every
// backlogged STA sends `copies` duplicates of its head frame in distinct
// randomly chosen RUs. The AP returns to waiting once a slot's failed-RU
// count is below `copies`: then no participant can have lost every copy.
class NuoraScheduler final : public Scheduler {
 public:
  explicit NuoraScheduler(const SimConfig& cfg)
      : rus_(cfg.max_rta_rus), copies_(cfg.copies) {}

  std::unique_ptr<Scheduler> clone() const override {
    return std::make_unique<NuoraScheduler>(*this);
  }
  void encode_state(std::vector<std::uint64_t>& out) const override {
    out.push_back(static_cast<std::uint64_t>(mode_));
  }

 protected:
  void build_resolution_schedule(PickSource&) override {
    for (std::uint32_t i = 0; i < rus_; ++i) schedule_.add_ra();
  }
  void on_resolution_observations(std::span<const RuObservation> obs) override;

 private:
  std::uint32_t rus_;
  std::uint32_t copies_;
};

// NGRA: on entering resolution the AP marks every STA as requiring
// resources and gives each marked STA `copies` random RUs, capping each RU
// at ceil(f*N/k) STAs. The first resolution slot uses all k RUs for these
// assignments; later slots keep RU 0 for RA and assign within RUs 1..k-1.
// A STA whose assignment touches any failure-free RU provably needs nothing
// and is unmarked; a Failure in the RA RU re-marks everyone. Waiting resumes
// once no STA is marked.
class NgraScheduler final : public Scheduler {
 public:
  explicit NgraScheduler(const SimConfig& cfg)
      : n_stas_(cfg.n_stas),
        rus_(cfg.max_rta_rus),
        copies_(cfg.copies),
        capacity_((static_cast<std::uint64_t>(cfg.copies) * cfg.n_stas +
                   cfg.max_rta_rus - 1) /
                  cfg.max_rta_rus),
        marked_(cfg.n_stas, false) {}

  std::uint32_t capacity() const { return capacity_; }
  const std::vector<bool>& marked() const { return marked_; }

  std::unique_ptr<Scheduler> clone() const override {
    return std::make_unique<NgraScheduler>(*this);
  }
  void encode_state(std::vector<std::uint64_t>& out) const override;

 protected:
  void enter_resolution() override {
    marked_.assign(n_stas_, true);
    first_resolution_slot_ = true;
  }
  void build_resolution_schedule(PickSource& picks) override;
  void on_resolution_observations(std::span<const RuObservation> obs) override;

 private:
  std::uint32_t n_stas_;
  std::uint32_t rus_;
  std::uint32_t copies_;
  std::uint32_t capacity_;  // ceil(f*N/k), STAs per RU
  std::vector<bool> marked_;
  bool first_resolution_slot_ = false;
  // scratch
  std::vector<StaId> order_;
  std::vector<RuIndex> avail_;
  std::vector<RuIndex> chosen_;
  std::vector<std::uint32_t> load_;
};

// NCRA: resolution slots keep RU 0 for RA and hand out collision-free
// blocks of `copies` consecutive RUs, one STA per block: first the STAs
// whose every copy failed last slot (retries), then fresh STAs in id order
// from the cycle cursor. Blocks that do not fit are not allocated. The AP
// returns to waiting once no scheduled STA lost all its copies and the RA
// RU saw no Failure.
class NcraScheduler final : public Scheduler {
 public:
  explicit NcraScheduler(const SimConfig& cfg)
      : n_stas_(cfg.n_stas), rus_(cfg.max_rta_rus), copies_(cfg.copies) {}

  std::uint32_t cursor() const { return cursor_; }
  const std::vector<StaId>& pending_retry() const { return pending_; }

  std::unique_ptr<Scheduler> clone() const override {
    return std::make_unique<NcraScheduler>(*this);
  }
  void encode_state(std::vector<std::uint64_t>& out) const override;

 protected:
  void enter_resolution() override {
    cursor_ = 0;
    pending_.clear();
  }
  void build_resolution_schedule(PickSource&) override;
  void on_resolution_observations(std::span<const RuObservation> obs) override;

 private:
  std::uint32_t n_stas_;
  std::uint32_t rus_;
  std::uint32_t copies_;
  std::uint32_t cursor_ = 0;         // next fresh STA in the current pass
  std::vector<StaId> pending_;       // failed all copies last slot
  std::vector<StaId> scheduled_;     // this slot's block owners, in order
  std::vector<RuIndex> first_ru_;    // first RU of each block
};

std::unique_ptr<Scheduler> make_scheduler(const SimConfig& cfg);

}  // namespace rtasim
