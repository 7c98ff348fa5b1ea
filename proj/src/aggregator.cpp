#include "kpgen/aggregator.hpp"

#include <algorithm>
#include <unordered_map>

#include "kpgen/evaluator.hpp"

namespace kpgen {

std::string_view to_string(EpsilonMode mode) {
  return mode == EpsilonMode::per_occurrence ? "per_occurrence" : "per_keyphrase";
}

EpsilonMode parse_epsilon_mode(std::string_view name) {
  if (name == "per_occurrence") return EpsilonMode::per_occurrence;
  if (name == "per_keyphrase") return EpsilonMode::per_keyphrase;
  throw ConfigError("unknown epsilon mode '" + std::string(name) + "'");
}

std::string aggregation_key(std::string_view phrase) {
  const auto tokens = normalize(phrase).tokens;
  std::string key;
  for (const auto& t : tokens) {
    if (!key.empty()) key += ' ';
    key += t;
  }
  return key;
}

std::vector<ScoredKeyphrase> aggregate(std::span<const RankedKeyphrases> per_paragraph,
                                       std::size_t n, EpsilonMode mode) {
  if (n < 1) throw ConfigError("aggregate: n must be at least 1");
  const Rational epsilon(1, static_cast<long long>(n) + 1);

  std::vector<ScoredKeyphrase> scored;
  std::unordered_map<std::string, std::size_t> slot;

  for (const auto& list : per_paragraph) {
    if (list.phrases.size() > n) {
      throw std::invalid_argument("aggregate: paragraph " + std::to_string(list.paragraph_index) +
                                  " has more than n keyphrases");
    }
    // best rank per key within this paragraph
    std::unordered_map<std::string, std::size_t> seen_here;
    for (std::size_t pos = 0; pos < list.phrases.size(); ++pos) {
      auto key = aggregation_key(list.phrases[pos]);
      if (key.empty() || seen_here.contains(key)) continue;
      const std::size_t rank = pos + 1;
      seen_here.emplace(key, rank);

      auto [it, inserted] = slot.try_emplace(key, scored.size());
      if (inserted) {
        scored.push_back({std::move(key), list.phrases[pos], Rational(0), 0,
                          {list.paragraph_index, rank}});
      }
      auto& entry = scored[it->second];
      entry.score += Rational(1, static_cast<long long>(rank));
      if (mode == EpsilonMode::per_occurrence || entry.occurrences == 0) entry.score += epsilon;
      ++entry.occurrences;
      const FirstOccurrence here{list.paragraph_index, rank};
      if (here < entry.first) {
        entry.first = here;
        entry.display = list.phrases[pos];
      }
    }
  }

  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first != b.first) return a.first < b.first;
    return a.key < b.key;
  });
  if (scored.size() > n) scored.resize(n);
  return scored;
}

}  // namespace kpgen
