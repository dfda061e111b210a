#include <doctest.h>

#include <cmath>

#include "rtasim/channel.hpp"

using namespace rtasim;

namespace {
SlotSchedule ra_schedule(std::uint32_t rus) {
  SlotSchedule s;
  s.reset(0);
  for (std::uint32_t i = 0; i < rus; ++i) s.add_ra();
  return s;
}
}  // namespace

TEST_CASE("two transmissions in one RU always collide") {
  ChannelModel ch(0.0);
  RngStream rng(1);
  SlotSchedule s = ra_schedule(4);
  std::vector<Transmission> txs{{1, 100, 3}, {2, 101, 3}};
  std::vector<RuObservation> obs;
  ch.resolve_slot(txs, s, rng, obs);
  CHECK(obs.size() == 4);
  CHECK(obs[3].outcome == RuOutcome::Failure);
  CHECK(obs[0].outcome == RuOutcome::Idle);
  CHECK(obs[1].outcome == RuOutcome::Idle);
  CHECK(obs[2].outcome == RuOutcome::Idle);
}

TEST_CASE("a noiseless solo transmission succeeds and is attributed") {
  ChannelModel ch(0.0);
  RngStream rng(1);
  SlotSchedule s = ra_schedule(1);
  std::vector<Transmission> txs{{7, 42, 0}};
  std::vector<RuObservation> obs;
  ch.resolve_slot(txs, s, rng, obs);
  REQUIRE(obs.size() == 1);
  CHECK(obs[0].outcome == RuOutcome::Success);
  CHECK(obs[0].sta == 7);
  CHECK(obs[0].packet == 42);
}

TEST_CASE("p=1 fails every non-idle RU") {
  ChannelModel ch(1.0);
  RngStream rng(1);
  SlotSchedule s = ra_schedule(3);
  std::vector<Transmission> txs{{0, 1, 0}, {1, 2, 1}, {2, 3, 1}};
  std::vector<RuObservation> obs;
  ch.resolve_slot(txs, s, rng, obs);
  CHECK(obs[0].outcome == RuOutcome::Failure);  // solo + certain noise
  CHECK(obs[1].outcome == RuOutcome::Failure);  // collision
  CHECK(obs[2].outcome == RuOutcome::Idle);
}

TEST_CASE("solo success frequency matches the Bernoulli rate") {
  // p = 0.2: over 1e6 seeded trials the success frequency is 0.8 +- 0.002.
  ChannelModel ch(0.2);
  RngStream rng(2024);
  SlotSchedule s = ra_schedule(1);
  std::vector<Transmission> txs{{0, 0, 0}};
  std::vector<RuObservation> obs;
  int successes = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    ch.resolve_slot(txs, s, rng, obs);
    if (obs[0].outcome == RuOutcome::Success) ++successes;
  }
  CHECK(std::abs(successes / double(n) - 0.8) < 0.002);
}

TEST_CASE("identical inputs give identical observations") {
  ChannelModel ch(0.37);
  SlotSchedule s = ra_schedule(5);
  std::vector<Transmission> txs{{0, 1, 0}, {1, 2, 2}, {2, 3, 2}, {3, 4, 4}};
  std::vector<RuObservation> a, b;
  RngStream r1(99), r2(99);
  for (int i = 0; i < 50; ++i) {
    ch.resolve_slot(txs, s, r1, a);
    ch.resolve_slot(txs, s, r2, b);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].outcome == b[j].outcome);
      if (a[j].outcome == RuOutcome::Success) CHECK(a[j].sta == b[j].sta);
    }
  }
}

TEST_CASE("idle RUs never consume randomness") {
  // Adding trailing idle RUs must not perturb the stream feeding later
  // slots: outcomes of a busy RU sequence are identical either way.
  ChannelModel ch(0.5);
  std::vector<Transmission> txs{{0, 1, 0}};
  std::vector<RuObservation> obs;

  std::vector<RuOutcome> narrow, wide;
  {
    RngStream rng(7);
    SlotSchedule s = ra_schedule(1);
    for (int i = 0; i < 200; ++i) {
      ch.resolve_slot(txs, s, rng, obs);
      narrow.push_back(obs[0].outcome);
    }
  }
  {
    RngStream rng(7);
    SlotSchedule s = ra_schedule(9);  // 8 trailing idle RUs
    for (int i = 0; i < 200; ++i) {
      ch.resolve_slot(txs, s, rng, obs);
      wide.push_back(obs[0].outcome);
    }
  }
  CHECK(narrow == wide);
}

TEST_CASE("a transmission outside the allocation is a contract violation") {
  ChannelModel ch(0.0);
  RngStream rng(1);
  SlotSchedule s = ra_schedule(2);
  std::vector<Transmission> txs{{0, 1, 2}};
  std::vector<RuObservation> obs;
  CHECK_THROWS_AS(ch.resolve_slot(txs, s, rng, obs), ContractViolation);
}
