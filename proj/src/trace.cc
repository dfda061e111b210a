#include "rtasim/trace.hpp"

#include <ostream>

#include <json.hpp>

namespace rtasim {

void JsonlTraceSink::on_slot(const SlotTraceRecord& record) {
  nlohmann::json j;
  j["slot"] = record.slot;
  j["mode"] = to_string(record.mode);
  nlohmann::json rus = nlohmann::json::array();
  for (std::size_t i = 0; i < record.rus.size(); ++i) {
    const TraceRu& ru = record.rus[i];
    nlohmann::json r;
    r["ru"] = i;
    r["kind"] = ru.kind == RuKind::RandomAccess ? "ra" : "da";
    if (ru.kind == RuKind::Deterministic) r["stas"] = ru.assigned;
    r["outcome"] = to_string(ru.outcome);
    if (ru.outcome == RuOutcome::Success) {
      r["sta"] = ru.success_sta;
      r["packet"] = ru.success_packet;
    }
    rus.push_back(std::move(r));
  }
  j["rus"] = std::move(rus);
  out_ << j.dump() << '\n';
}

}  // namespace rtasim
