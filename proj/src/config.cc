#include "rtasim/config.hpp"

#include <cmath>

namespace rtasim {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Nuora: return "nuora";
    case Algorithm::Ngra: return "ngra";
    case Algorithm::Ncra: return "ncra";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
  if (name == "nuora" || name == "NUORA") return Algorithm::Nuora;
  if (name == "ngra" || name == "NGRA") return Algorithm::Ngra;
  if (name == "ncra" || name == "NCRA") return Algorithm::Ncra;
  return std::nullopt;
}

const char* to_string(RuOutcome o) {
  switch (o) {
    case RuOutcome::Idle: return "idle";
    case RuOutcome::Success: return "success";
    case RuOutcome::Failure: return "failure";
  }
  return "?";
}

std::vector<std::string> validate_config(const SimConfig& cfg) {
  std::vector<std::string> errors;
  auto fail = [&errors](std::string msg) { errors.push_back(std::move(msg)); };

  if (cfg.n_stas < 1) fail("n_stas: must be >= 1");
  if (cfg.copies < 1) fail("copies: must be >= 1");
  if (cfg.max_rta_rus < 1) fail("max_rta_rus: must be >= 1");
  if (cfg.copies > cfg.max_rta_rus) fail("copies: must be <= max_rta_rus");
  if (cfg.max_rta_rus > cfg.total_rus) fail("max_rta_rus: must be <= total_rus");
  if (!(cfg.noise_prob >= 0.0 && cfg.noise_prob <= 1.0))
    fail("noise_prob: must be in [0, 1]");
  if (!(cfg.arrival_rate >= 0.0) || std::isinf(cfg.arrival_rate))
    fail("arrival_rate: must be finite and >= 0");
  if (!(cfg.delay_budget > 0.0) || std::isinf(cfg.delay_budget))
    fail("delay_budget: must be finite and > 0");
  if (!(cfg.slot_duration > 0.0) || std::isinf(cfg.slot_duration))
    fail("slot_duration: must be finite and > 0");
  if (cfg.horizon.packets == 0 && cfg.horizon.slots == 0)
    fail("horizon: either packets or slots must be set");
  if (cfg.horizon.packets > 0 && cfg.horizon.slots == 0 &&
      cfg.arrival_rate == 0.0)
    fail("horizon: a pure packet horizon requires arrival_rate > 0");
  return errors;
}

}  // namespace rtasim
