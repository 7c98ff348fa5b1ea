#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "kpgen/aggregator.hpp"
#include "oracles.hpp"

using namespace kpgen;

namespace {

Rational r(long long num, long long den) { return Rational(num, den); }

std::vector<std::string> keys_of(const std::vector<ScoredKeyphrase>& scored) {
  std::vector<std::string> out;
  for (const auto& s : scored) out.push_back(s.key);
  return out;
}

std::vector<RankedKeyphrases> random_instance(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g",
                                              "h", "i", "j", "k", "l"};
  const std::size_t paragraphs = rng() % 7;  // 0..6
  std::vector<RankedKeyphrases> lists;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    auto pool = vocab;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(rng() % (std::min<std::size_t>(n, 10) + 1));
    lists.push_back({p, pool});
  }
  return lists;
}

}  // namespace

TEST_SUITE("aggregator") {

TEST_CASE("single list keeps its order with direct scores") {
  const std::vector<RankedKeyphrases> lists{{0, {"a", "b", "c"}}};
  const auto out = aggregate(lists, 10);
  REQUIRE(out.size() == 3);
  CHECK(keys_of(out) == std::vector<std::string>{"a", "b", "c"});
  CHECK(out[0].score == r(1, 1) + r(1, 11));
  CHECK(out[1].score == r(1, 2) + r(1, 11));
  CHECK(out[2].score == r(1, 3) + r(1, 11));
}

TEST_CASE("mirrored lists tie and break by first occurrence") {
  const std::vector<RankedKeyphrases> lists{{0, {"a", "b"}}, {1, {"b", "a"}}};
  const auto out = aggregate(lists, 10);
  REQUIRE(out.size() == 2);
  CHECK(out[0].key == "a");
  CHECK(out[0].score == r(3, 2) + r(2, 11));
  CHECK(out[1].score == out[0].score);
  const auto oracle = oracle::brute_force_aggregate(
      {{0, {"a", "b"}}, {1, {"b", "a"}}}, 10);
  CHECK(oracle[0].key == "a");
  CHECK(oracle[0].score.str() == to_fraction_string(out[0].score));
}

TEST_CASE("exact tie follows paragraph index") {
  const std::vector<RankedKeyphrases> ab{{0, {"a"}}, {1, {"b"}}};
  CHECK(keys_of(aggregate(ab, 10)) == std::vector<std::string>{"a", "b"});
  const std::vector<RankedKeyphrases> ba{{1, {"a"}}, {0, {"b"}}};
  CHECK(keys_of(aggregate(ba, 10)) == std::vector<std::string>{"b", "a"});
}

TEST_CASE("more occurrences win equal inverse-rank sums") {
  // x: 1/2 + 1/2 (two paragraphs); y: 1/1 (one paragraph). Sums tie at 1.
  const std::vector<RankedKeyphrases> lists{{0, {"y", "x"}}, {1, {"z", "x"}}};
  const auto out = aggregate(lists, 10);
  CHECK(out[0].key == "x");
  CHECK(out[0].occurrences == 2);
  CHECK(out[0].score > out[1].score);

  const auto per_keyphrase = aggregate(lists, 10, EpsilonMode::per_keyphrase);
  CHECK(per_keyphrase[0].key == "y");  // ties fall back to first occurrence
  CHECK(per_keyphrase[0].score == per_keyphrase[1].score);
}

TEST_CASE("keys use evaluator normalization; display is the first surface form") {
  const std::vector<RankedKeyphrases> lists{{0, {"Sensor-Network", "x"}},
                                            {1, {"sensor network"}}};
  const auto out = aggregate(lists, 10);
  CHECK(out[0].key == "sensor network");
  CHECK(out[0].display == "Sensor-Network");
  CHECK(out[0].occurrences == 2);
}

TEST_CASE("display comes from the earliest paragraph even when lists arrive unordered") {
  const std::vector<RankedKeyphrases> lists{{5, {"Graph"}}, {2, {"x", "graph"}}};
  const auto out = aggregate(lists, 10);
  const auto it = std::find_if(out.begin(), out.end(), [](auto& s) { return s.key == "graph"; });
  REQUIRE(it != out.end());
  CHECK(it->display == "graph");
  CHECK(it->first == FirstOccurrence{2, 2});
}

TEST_CASE("a key repeated in one list counts once at its best rank") {
  const std::vector<RankedKeyphrases> lists{{0, {"e-mail", "x", "e mail"}}};
  const auto out = aggregate(lists, 10);
  REQUIRE(out.size() == 2);
  CHECK(out[0].score == r(1, 1) + r(1, 11));
  CHECK(out[0].occurrences == 1);
}

TEST_CASE("truncation to n and empty input") {
  const std::vector<RankedKeyphrases> lists{{0, {"a", "b", "c"}}, {1, {"d", "e", "f"}}};
  CHECK(aggregate(lists, 3).size() == 3);
  CHECK(aggregate(std::vector<RankedKeyphrases>{}, 10).empty());
  CHECK(aggregate(std::vector<RankedKeyphrases>{{0, {}}}, 10).empty());
}

TEST_CASE("preconditions") {
  const std::vector<RankedKeyphrases> lists{{0, {"a", "b", "c"}}};
  CHECK_THROWS_AS(aggregate(lists, 0), ConfigError);
  CHECK_THROWS_AS(aggregate(lists, 2), std::invalid_argument);
}

TEST_CASE("punctuation-only phrases never score") {
  const std::vector<RankedKeyphrases> lists{{0, {"--", "a"}}};
  const auto out = aggregate(lists, 10);
  REQUIRE(out.size() == 1);
  CHECK(out[0].key == "a");
  CHECK(out[0].score == r(1, 2) + r(1, 11));
}

TEST_CASE("random instances match the brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::vector<std::size_t>{1, 3, 5, 10}[rng() % 4];
    const auto lists = random_instance(rng, n);
    for (const bool per_occurrence : {true, false}) {
      const auto got = aggregate(lists, n,
                                 per_occurrence ? EpsilonMode::per_occurrence
                                                : EpsilonMode::per_keyphrase);
      const auto want = oracle::brute_force_aggregate(lists, n, per_occurrence);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].key == want[i].key);
        CHECK(to_fraction_string(got[i].score) == want[i].score.str());
        CHECK(got[i].occurrences == want[i].occurrences);
      }
    }
  }
}

TEST_CASE("permuting paragraphs leaves scores unchanged") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto lists = random_instance(rng, 10);
    // fresh indices after shuffling so the tie-break order can change
    auto shuffled = lists;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i].paragraph_index = i;
    auto score_map = [](const std::vector<ScoredKeyphrase>& v) {
      std::map<std::string, Rational> m;
      for (const auto& s : v) m[s.key] = s.score;
      return m;
    };
    // n large enough that truncation cannot drop tied entries differently
    CHECK(score_map(aggregate(lists, 12 * 1 + 0 + 10)) ==
          score_map(aggregate(shuffled, 22)));
  }
}

TEST_CASE("invariants: positive scores, no duplicate keys, sorted") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lists = random_instance(rng, 5);
    const auto out = aggregate(lists, 5);
    CHECK(out.size() <= 5);
    std::set<std::string> keys;
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].score > 0);
      keys.insert(out[i].key);
      if (i) CHECK(out[i - 1].score >= out[i].score);
    }
    CHECK(keys.size() == out.size());
  }
}

}
