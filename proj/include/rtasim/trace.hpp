#pragma once

#include <iosfwd>
#include <vector>

#include "rtasim/scheduler.hpp"
#include "rtasim/types.hpp"

namespace rtasim {

struct TraceRu {
  RuKind kind = RuKind::RandomAccess;
  std::vector<StaId> assigned;  // deterministic RUs only
  RuOutcome outcome = RuOutcome::Idle;
  StaId success_sta = 0;          // valid iff outcome == Success
  PacketId success_packet = kNoPacket;
};

struct SlotTraceRecord {
  std::uint64_t slot = 0;
  SchedulerMode mode = SchedulerMode::Waiting;
  std::vector<TraceRu> rus;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_slot(const SlotTraceRecord& record) = 0;
};

// Keeps every record in memory; for tests and small traces.
class CollectingTraceSink final : public TraceSink {
 public:
  void on_slot(const SlotTraceRecord& record) override {
    records.push_back(record);
  }
  std::vector<SlotTraceRecord> records;
};

// One JSON object per line:
//   {"slot":0,"mode":"waiting","rus":[{"ru":0,"kind":"ra","outcome":"idle"}]}
// Deterministic RUs add "stas"; successes add "sta" and "packet".
class JsonlTraceSink final : public TraceSink {
 public:
  explicit JsonlTraceSink(std::ostream& out) : out_(out) {}
  void on_slot(const SlotTraceRecord& record) override;

 private:
  std::ostream& out_;
};

}  // namespace rtasim
