#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtasim/types.hpp"

namespace rtasim {

// Run length. Packet horizons are preferred for PLR precision (the run ends
// once this many packets have been generated); slot horizons are the
// fallback. Zero means "no bound on this axis"; at least one must be set.
struct Horizon {
  std::uint64_t packets = 0;
  std::uint64_t slots = 0;
};

struct SimConfig {
  std::uint32_t n_stas = 18;       // N: RTA stations in the BSS
  std::uint32_t total_rus = 18;    // F: channel width in 26-tone RUs
  std::uint32_t max_rta_rus = 9;   // k: RUs the AP may give to RTA traffic
  double slot_duration = 270e-6;   // T: one TF/data/ack exchange, seconds
  double delay_budget = 5 * 270e-6;  // D: per-packet deadline, seconds
  double arrival_rate = 1.0;       // packets/second per STA
  double noise_prob = 0.0;         // p: per-RU chance a solo transmission dies
  std::uint32_t copies = 1;        // f: duplicate transmissions per slot
  Algorithm algorithm = Algorithm::Nuora;
  std::uint64_t seed = 1;
  Horizon horizon{1'000'000, 0};
};

// Checks every SimConfig invariant and reports all violations (never stops
// at the first). An empty result means the config is usable.
std::vector<std::string> validate_config(const SimConfig& cfg);

}  // namespace rtasim
