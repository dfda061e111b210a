#pragma once

#include <deque>
#include <limits>
#include <span>
#include <vector>

#include "rtasim/picks.hpp"
#include "rtasim/rng.hpp"
#include "rtasim/types.hpp"

namespace rtasim {

// One RTA station: Poisson traffic source, FIFO queue with deadline expiry,
// and transmit-RU selection against a slot schedule.
//
// Timing conventions (shared with the engine and the oracle):
//   - a packet with arrival_time <= slot start is transmittable that slot;
//   - delivery completes at slot end, so a slot is a usable attempt iff
//     slot_end <= deadline;
//   - the expiry sweep runs before transmit selection and drops exactly the
//     packets with deadline < slot_end, i.e. those that can no longer make
//     any usable attempt.
class Station {
 public:
  Station(StaId id, double arrival_rate, double delay_budget)
      : id_(id), rate_(arrival_rate), budget_(delay_budget) {}

  StaId id() const { return id_; }
  const std::deque<Packet>& queue() const { return queue_; }
  bool has_data() const { return !queue_.empty(); }

  // Additional deterministic arrivals (ascending times), merged with the
  // Poisson stream. Used by trace and oracle-comparison runs.
  void force_arrivals(std::vector<double> times) { plan_ = std::move(times); }

  // Draws the first Poisson inter-arrival without enqueueing anything, so
  // next_arrival() is meaningful before the first generate call.
  void prime(RngStream& rng) {
    if (!primed_) {
      primed_ = true;
      if (rate_ > 0.0) next_poisson_ = rng.exponential(rate_);
    }
  }

  // Earliest pending arrival not yet enqueued; +inf if none will ever come.
  double next_arrival() const {
    double t = next_poisson_;
    if (plan_pos_ < plan_.size() && plan_[plan_pos_] < t) t = plan_[plan_pos_];
    return t;
  }

  // Appends every packet arriving at or before `upto` (monotone across
  // calls). Returns the number generated. λ=0 with no plan yields none.
  std::uint32_t generate_arrivals(double upto, RngStream& rng,
                                  PacketId& next_id) {
    prime(rng);
    std::uint32_t count = 0;
    for (;;) {
      const bool plan_next =
          plan_pos_ < plan_.size() && plan_[plan_pos_] <= next_poisson_;
      const double t = plan_next ? plan_[plan_pos_] : next_poisson_;
      if (t > upto) break;
      queue_.push_back(Packet{id_, next_id++, t, t + budget_});
      ++count;
      if (plan_next) {
        ++plan_pos_;
      } else {
        next_poisson_ += rng.exponential(rate_);
      }
    }
    return count;
  }

  // Drops every queued packet that cannot complete a delivery by its
  // deadline anymore (deadline < end of the slot about to run). The queue
  // is FIFO with a constant budget, so expired packets sit at the front.
  std::uint32_t expire_deadlines(double slot_end) {
    std::uint32_t dropped = 0;
    while (!queue_.empty() && queue_.front().deadline < slot_end) {
      queue_.pop_front();
      ++dropped;
    }
    return dropped;
  }

  // Emits this slot's transmissions for the head-of-line packet:
  //   - with deterministic RUs assigned: one copy in each of the first
  //     `copies` of them (ascending RU index);
  //   - otherwise: copies in min(copies, |ra_rus|) distinct random-access
  //     RUs chosen uniformly (a waiting-mode slot has one RA RU, so exactly
  //     one copy goes out);
  //   - no queued data: nothing, regardless of assignments.
  void select_transmissions(std::span<const RuIndex> ra_rus,
                            std::span<const RuIndex> my_da_rus,
                            std::uint32_t copies, PickSource& picks,
                            std::vector<Transmission>& out) {
    if (queue_.empty()) return;
    const PacketId head = queue_.front().id;
    if (!my_da_rus.empty()) {
      const std::size_t n = std::min<std::size_t>(copies, my_da_rus.size());
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(Transmission{id_, head, my_da_rus[i]});
      return;
    }
    if (ra_rus.empty()) return;
    const std::size_t n = std::min<std::size_t>(copies, ra_rus.size());
    pool_.assign(ra_rus.begin(), ra_rus.end());
    chosen_.clear();
    sample_distinct(pool_, n, picks, chosen_);
    for (RuIndex ru : chosen_) out.push_back(Transmission{id_, head, ru});
  }

  // Handles a Success observation for this station. Repeated successes of
  // the same packet (several copies got through) count as one delivery.
  // Returns true iff a packet left the queue. Throws if the AP reports a
  // packet this station does not hold.
  bool deliver(PacketId packet, double slot_end) {
    if (packet == last_delivered_) return false;
    if (queue_.empty() || queue_.front().id != packet)
      throw ContractViolation("STA " + std::to_string(id_) +
                              ": success for a packet it does not hold");
    (void)slot_end;  // queue_.front().deadline >= slot_end by sweep order
    queue_.pop_front();
    last_delivered_ = packet;
    return true;
  }

 private:
  StaId id_;
  double rate_;
  double budget_;
  std::deque<Packet> queue_;
  bool primed_ = false;
  double next_poisson_ = std::numeric_limits<double>::infinity();
  std::vector<double> plan_;
  std::size_t plan_pos_ = 0;
  PacketId last_delivered_ = kNoPacket;
  std::vector<RuIndex> pool_;
  std::vector<RuIndex> chosen_;
};

}  // namespace rtasim
