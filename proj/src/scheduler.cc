#include "rtasim/scheduler.hpp"

#include <algorithm>
#include <cassert>

namespace rtasim {

const char* to_string(SchedulerMode m) {
  return m == SchedulerMode::Waiting ? "waiting" : "resolution";
}

void NuoraScheduler::on_resolution_observations(
    std::span<const RuObservation> obs) {
  std::uint32_t failures = 0;
  for (const RuObservation& o : obs)
    if (o.outcome == RuOutcome::Failure) ++failures;
  // Fewer failed RUs than copies per frame: every STA that transmitted got
  // at least one copy through, so nobody is left backlogged by this slot.
  if (failures < copies_) mode_ = SchedulerMode::Waiting;
}

void NgraScheduler::encode_state(std::vector<std::uint64_t>& out) const {
  out.push_back(static_cast<std::uint64_t>(mode_));
  out.push_back(first_resolution_slot_ ? 1 : 0);
  for (std::uint32_t base = 0; base < n_stas_; base += 64) {
    std::uint64_t bits = 0;
    const std::uint32_t end = std::min(n_stas_, base + 64);
    for (std::uint32_t s = base; s < end; ++s)
      if (marked_[s]) bits |= 1ULL << (s - base);
    out.push_back(bits);
  }
}

void NgraScheduler::build_resolution_schedule(PickSource& picks) {
  // First resolution slot: all k RUs are deterministic. Later slots keep
  // RU 0 for RA so unmarked STAs with fresh data can still reach the AP.
  const bool first = first_resolution_slot_;
  first_resolution_slot_ = false;
  RuIndex da_begin = 0;
  if (!first) {
    schedule_.add_ra();
    da_begin = 1;
  }
  for (RuIndex ru = da_begin; ru < rus_; ++ru) schedule_.add_da();

  order_.clear();
  for (StaId s = 0; s < n_stas_; ++s)
    if (marked_[s]) order_.push_back(s);
  shuffle(order_, picks);

  load_.assign(rus_, 0);
  for (StaId s : order_) {
    avail_.clear();
    for (RuIndex ru = da_begin; ru < rus_; ++ru)
      if (load_[ru] < capacity_) avail_.push_back(ru);
    // Capacity can run out in later slots (k-1 RUs for up to N re-marked
    // STAs); the STA then gets however many RUs remain, possibly none.
    chosen_.clear();
    sample_distinct(avail_, copies_, picks, chosen_);
    for (RuIndex ru : chosen_) {
      schedule_.assigned_mut(ru).push_back(s);
      load_[ru] += 1;
    }
  }
}

void NgraScheduler::on_resolution_observations(
    std::span<const RuObservation> obs) {
  // An RU without a Failure proves every STA assigned to it needs nothing:
  // Idle means they had no data, Success means a frame got through (and any
  // co-assigned STA cannot have transmitted, or the RU would have collided).
  const bool has_ra = schedule_.rta_ru_count() > 0 && schedule_.is_ra(0);
  for (const RuObservation& o : obs) {
    if (schedule_.is_ra(o.ru)) continue;
    if (o.outcome == RuOutcome::Failure) continue;
    for (StaId s : schedule_.ru(o.ru).assigned) marked_[s] = false;
  }
  // A collision in the RA RU means unknown STAs want resources again.
  if (has_ra && obs[0].outcome == RuOutcome::Failure)
    marked_.assign(n_stas_, true);

  bool any = false;
  for (std::uint32_t s = 0; s < n_stas_ && !any; ++s) any = marked_[s];
  if (!any) mode_ = SchedulerMode::Waiting;
}

void NcraScheduler::encode_state(std::vector<std::uint64_t>& out) const {
  out.push_back(static_cast<std::uint64_t>(mode_));
  out.push_back(cursor_);
  out.push_back(pending_.size());
  for (StaId s : pending_) out.push_back(s);
}

void NcraScheduler::build_resolution_schedule(PickSource&) {
  schedule_.add_ra();
  scheduled_.clear();
  first_ru_.clear();

  RuIndex next_ru = 1;
  auto block_fits = [&] { return next_ru + copies_ <= rus_; };

  // Retries never outnumber the blocks of one slot, so they always fit.
  for (StaId s : pending_) {
    scheduled_.push_back(s);
    first_ru_.push_back(next_ru);
    next_ru += copies_;
  }
  while (cursor_ < n_stas_ && block_fits()) {
    scheduled_.push_back(cursor_);
    first_ru_.push_back(next_ru);
    next_ru += copies_;
    ++cursor_;
  }
  // Only assigned blocks are taken from the channel; a partial block or an
  // exhausted cycle leaves the remaining RUs to non-RTA traffic.
  for (std::size_t i = 0; i < scheduled_.size(); ++i)
    for (std::uint32_t c = 0; c < copies_; ++c)
      schedule_.add_da().push_back(scheduled_[i]);
}

void NcraScheduler::on_resolution_observations(
    std::span<const RuObservation> obs) {
  pending_.clear();
  for (std::size_t i = 0; i < scheduled_.size(); ++i) {
    std::uint32_t failed = 0;
    for (std::uint32_t c = 0; c < copies_; ++c)
      if (obs[first_ru_[i] + c].outcome == RuOutcome::Failure) ++failed;
    // All copies failed: the STA could not get anything through. (All-idle
    // means it had nothing to send and is not retried.)
    if (failed == copies_) pending_.push_back(scheduled_[i]);
  }
  const bool ra_failed = obs[0].outcome == RuOutcome::Failure;
  if (pending_.empty() && !ra_failed) {
    mode_ = SchedulerMode::Waiting;
  } else if (pending_.empty() && cursor_ >= n_stas_) {
    // Demand persists (RA keeps failing) after a full pass: cycle again.
    cursor_ = 0;
  }
}

std::unique_ptr<Scheduler> make_scheduler(const SimConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::Nuora: return std::make_unique<NuoraScheduler>(cfg);
    case Algorithm::Ngra: return std::make_unique<NgraScheduler>(cfg);
    case Algorithm::Ncra: return std::make_unique<NcraScheduler>(cfg);
  }
  throw ContractViolation("unknown algorithm");
}

}  // namespace rtasim
