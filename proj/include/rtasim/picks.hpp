#pragma once

#include <cstdint>
#include <vector>

#include "rtasim/rng.hpp"
#include "rtasim/types.hpp"

namespace rtasim {

// All discrete scheduling/selection choices (which RUs a station picks,
// the order NGRA walks its marked STAs, ...) go through this seam, so
// tests can pin exact branches and the oracle can enumerate them.
class PickSource {
 public:
  virtual ~PickSource() = default;
  // Uniform integer in [0, bound), bound >= 1.
  virtual std::uint32_t pick(std::uint32_t bound) = 0;
};

class RandomPicks final : public PickSource {
 public:
  explicit RandomPicks(RngStream& stream) : stream_(&stream) {}
  std::uint32_t pick(std::uint32_t bound) override {
    return stream_->uniform_index(bound);
  }

 private:
  RngStream* stream_;
};

// Replays a fixed list of choices; throws if the consumer asks for more
// picks than scripted or a scripted value is out of range.
class ScriptedPicks final : public PickSource {
 public:
  explicit ScriptedPicks(std::vector<std::uint32_t> values)
      : values_(std::move(values)) {}

  std::uint32_t pick(std::uint32_t bound) override {
    if (pos_ >= values_.size())
      throw ContractViolation("ScriptedPicks: script exhausted");
    std::uint32_t v = values_[pos_++];
    if (v >= bound)
      throw ContractViolation("ScriptedPicks: scripted value out of range");
    return v;
  }

  bool exhausted() const { return pos_ == values_.size(); }

 private:
  std::vector<std::uint32_t> values_;
  std::size_t pos_ = 0;
};

// Draws min(count, pool.size()) distinct elements from `pool` into `out`,
// uniformly without replacement (partial Fisher-Yates with swap-removal).
// Consumes one pick per drawn element, except when the whole pool is taken,
// which consumes none. `pool` is destroyed.
template <typename T>
void sample_distinct(std::vector<T>& pool, std::size_t count, PickSource& picks,
                     std::vector<T>& out) {
  if (pool.size() <= count) {
    for (T& v : pool) out.push_back(v);
    return;
  }
  for (std::size_t taken = 0; taken < count; ++taken) {
    std::uint32_t j = picks.pick(static_cast<std::uint32_t>(pool.size()));
    out.push_back(pool[j]);
    pool[j] = pool.back();
    pool.pop_back();
  }
}

// Fisher-Yates shuffle; consumes size()-1 picks (none for size <= 1).
template <typename T>
void shuffle(std::vector<T>& v, PickSource& picks) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uint32_t j = picks.pick(static_cast<std::uint32_t>(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace rtasim
