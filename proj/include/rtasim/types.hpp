#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtasim {

using StaId = std::uint32_t;
using RuIndex = std::uint32_t;
using PacketId = std::uint64_t;

inline constexpr PacketId kNoPacket = std::numeric_limits<PacketId>::max();

enum class Algorithm { Nuora, Ngra, Ncra };

const char* to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

// Raised when a module receives input that violates its caller contract
// (e.g. a transmission in an RU the schedule never allocated). These signal
// bugs in the surrounding code, not runtime conditions.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Packet {
  StaId owner = 0;
  PacketId id = kNoPacket;
  double arrival_time = 0.0;
  double deadline = 0.0;  // arrival_time + delay budget
};

struct Transmission {
  StaId sta = 0;
  PacketId packet = kNoPacket;
  RuIndex ru = 0;
};

enum class RuOutcome : std::uint8_t { Idle, Success, Failure };

const char* to_string(RuOutcome o);

// AP-visible outcome of one allocated RU. A Failure does not identify its
// cause: the AP cannot tell a collision from a noise-damaged transmission.
struct RuObservation {
  RuIndex ru = 0;
  RuOutcome outcome = RuOutcome::Idle;
  StaId sta = 0;            // valid iff outcome == Success
  PacketId packet = kNoPacket;  // valid iff outcome == Success
};

enum class RuKind : std::uint8_t { RandomAccess, Deterministic };

struct RuAllocation {
  RuKind kind = RuKind::RandomAccess;
  // Deterministic RUs only: the STAs allowed to transmit here. May be empty
  // for an RU that is reserved for RTA but ended up unassigned.
  std::vector<StaId> assigned;
};

// One slot's RTA allocation: a contiguous block of RUs indexed from 0.
// Buffers are reused across slots; callers rebuild via reset()/add_*().
class SlotSchedule {
 public:
  std::uint64_t slot_index() const { return slot_index_; }
  std::uint32_t rta_ru_count() const { return count_; }

  std::span<const RuAllocation> rus() const {
    return {rus_.data(), count_};
  }
  const RuAllocation& ru(RuIndex i) const { return rus_[i]; }

  bool is_ra(RuIndex i) const { return rus_[i].kind == RuKind::RandomAccess; }

  // A waiting-mode slot: exactly one RU, open for random access.
  bool waiting_shaped() const {
    return count_ == 1 && rus_[0].kind == RuKind::RandomAccess;
  }

  void reset(std::uint64_t slot_index) {
    slot_index_ = slot_index;
    count_ = 0;
  }

  RuIndex add_ra() {
    RuAllocation& a = next_slot();
    a.kind = RuKind::RandomAccess;
    return count_ - 1;
  }

  // Adds a deterministic RU; fill the returned list with its STAs.
  std::vector<StaId>& add_da() {
    RuAllocation& a = next_slot();
    a.kind = RuKind::Deterministic;
    return a.assigned;
  }

  // Builder access for assigning STAs to an already-added deterministic RU.
  std::vector<StaId>& assigned_mut(RuIndex i) { return rus_[i].assigned; }

 private:
  RuAllocation& next_slot() {
    if (count_ == rus_.size()) rus_.emplace_back();
    RuAllocation& a = rus_[count_++];
    a.assigned.clear();
    return a;
  }

  std::uint64_t slot_index_ = 0;
  std::uint32_t count_ = 0;
  std::vector<RuAllocation> rus_;
};

}  // namespace rtasim
