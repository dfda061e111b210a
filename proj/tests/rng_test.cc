#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "rtasim/picks.hpp"
#include "rtasim/rng.hpp"

using namespace rtasim;

TEST_CASE("derived seeds differ across domains and indices") {
  std::set<std::uint64_t> seeds;
  for (auto domain : {StreamDomain::Arrivals, StreamDomain::StationChoice,
                      StreamDomain::Channel, StreamDomain::Scheduler})
    for (std::uint64_t i = 0; i < 8; ++i)
      seeds.insert(derive_seed(42, domain, i));
  CHECK(seeds.size() == 32);
}

TEST_CASE("streams are deterministic per seed") {
  RngStream a(123), b(123), c(124);
  bool diverged = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    if (x != c.next_u64()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("u01 stays in [0,1)") {
  RngStream s(7);
  for (int i = 0; i < 10000; ++i) {
    double u = s.u01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_index covers its range uniformly") {
  RngStream s(99);
  const std::uint32_t bound = 7;
  std::vector<int> counts(bound, 0);
  const int n = 140000;
  for (int i = 0; i < n; ++i) counts[s.uniform_index(bound)]++;
  for (std::uint32_t v = 0; v < bound; ++v) {
    const double expect = double(n) / bound;
    // 5 sigma on a binomial count
    const double sigma = std::sqrt(expect * (1.0 - 1.0 / bound));
    CHECK(std::abs(counts[v] - expect) < 5 * sigma);
  }
}

TEST_CASE("bernoulli boundaries are exact") {
  RngStream s(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(s.bernoulli(0.0));
    CHECK(s.bernoulli(1.0));
  }
}

TEST_CASE("exponential matches its mean") {
  RngStream s(11);
  const double rate = 4.0;
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += s.exponential(rate);
  const double mean = sum / n;
  // se of the mean = (1/rate)/sqrt(n)
  CHECK(std::abs(mean - 1.0 / rate) < 5.0 / (rate * std::sqrt(double(n))));
}

TEST_CASE("scripted picks replay and guard their script") {
  ScriptedPicks picks({2, 0, 1});
  CHECK(picks.pick(4) == 2);
  CHECK(picks.pick(3) == 0);
  CHECK_FALSE(picks.exhausted());
  CHECK(picks.pick(2) == 1);
  CHECK(picks.exhausted());
  CHECK_THROWS_AS(picks.pick(2), ContractViolation);
  ScriptedPicks bad({5});
  CHECK_THROWS_AS(bad.pick(3), ContractViolation);
}

TEST_CASE("sample_distinct draws without replacement") {
  RngStream s(3);
  RandomPicks picks(s);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint32_t> pool{0, 1, 2, 3, 4, 5};
    std::vector<std::uint32_t> out;
    sample_distinct(pool, 3, picks, out);
    CHECK(out.size() == 3);
    std::set<std::uint32_t> uniq(out.begin(), out.end());
    CHECK(uniq.size() == 3);
    for (auto v : out) CHECK(v < 6);
  }
}

TEST_CASE("sample_distinct takes the whole pool without consuming picks") {
  ScriptedPicks picks({});  // any pick would throw
  std::vector<std::uint32_t> pool{4, 7};
  std::vector<std::uint32_t> out;
  sample_distinct(pool, 5, picks, out);
  CHECK(out == std::vector<std::uint32_t>{4, 7});
}

TEST_CASE("sample_distinct subsets are uniform") {
  // 2-subsets of 4 elements: 6 subsets, each 1/6.
  RngStream s(17);
  RandomPicks picks(s);
  std::map<std::set<std::uint32_t>, int> counts;
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint32_t> pool{0, 1, 2, 3};
    std::vector<std::uint32_t> out;
    sample_distinct(pool, 2, picks, out);
    counts[{out.begin(), out.end()}]++;
  }
  CHECK(counts.size() == 6);
  for (const auto& [subset, count] : counts) {
    const double expect = n / 6.0;
    const double sigma = std::sqrt(expect * (1.0 - 1.0 / 6.0));
    CHECK(std::abs(count - expect) < 5 * sigma);
  }
}
