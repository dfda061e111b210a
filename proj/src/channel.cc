#include "rtasim/channel.hpp"

#include <string>

namespace rtasim {

void ChannelModel::resolve_slot(std::span<const Transmission> transmissions,
                                const SlotSchedule& schedule, RngStream& rng,
                                std::vector<RuObservation>& out) {
  const std::uint32_t n = schedule.rta_ru_count();
  occupancy_.assign(n, 0);
  solo_tx_.resize(n);

  for (std::size_t i = 0; i < transmissions.size(); ++i) {
    const Transmission& tx = transmissions[i];
    if (tx.ru >= n)
      throw ContractViolation("transmission by STA " + std::to_string(tx.sta) +
                              " in unallocated RU " + std::to_string(tx.ru));
    occupancy_[tx.ru] += 1;
    solo_tx_[tx.ru] = static_cast<std::uint32_t>(i);
  }

  out.clear();
  for (RuIndex ru = 0; ru < n; ++ru) {
    RuObservation obs;
    obs.ru = ru;
    const std::uint32_t count = occupancy_[ru];
    if (count == 0) {
      obs.outcome = RuOutcome::Idle;
    } else if (count >= 2) {
      obs.outcome = RuOutcome::Failure;
    } else {
      const Transmission& tx = transmissions[solo_tx_[ru]];
      if (rng.bernoulli(noise_prob_)) {
        obs.outcome = RuOutcome::Failure;
      } else {
        obs.outcome = RuOutcome::Success;
        obs.sta = tx.sta;
        obs.packet = tx.packet;
      }
    }
    out.push_back(obs);
  }
}

}  // namespace rtasim
