#pragma once

#include <span>
#include <vector>

#include "rtasim/rng.hpp"
#include "rtasim/types.hpp"

namespace rtasim {

// Resolves one slot's transmissions into per-RU observations.
//
// An RU with two or more transmissions is a deterministic Failure (no
// capture effect). An RU with exactly one transmission fails independently
// with probability noise_prob; noise is i.i.d. per (RU, slot), so the
// copies of one frame sent in different RUs fail independently.
//
// Randomness consumption is fixed: exactly one draw per RU holding a single
// transmission, none for idle or collided RUs. Trailing idle RUs therefore
// never perturb the stream.
class ChannelModel {
 public:
  explicit ChannelModel(double noise_prob) : noise_prob_(noise_prob) {}

  double noise_prob() const { return noise_prob_; }

  // Emits one observation per allocated RU, ordered by RU index. Throws
  // ContractViolation if a transmission references an unallocated RU.
  void resolve_slot(std::span<const Transmission> transmissions,
                    const SlotSchedule& schedule, RngStream& rng,
                    std::vector<RuObservation>& out);

 private:
  double noise_prob_;
  std::vector<std::uint32_t> occupancy_;
  std::vector<std::uint32_t> solo_tx_;  // index into `transmissions`
};

}  // namespace rtasim
