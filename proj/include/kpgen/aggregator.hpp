#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpgen/generation.hpp"
#include "kpgen/rational.hpp"

namespace kpgen {

/// Where the tie-breaking epsilon = 1/(N+1) enters the score: once for every
/// paragraph that generated the keyphrase, or once per keyphrase.
enum class EpsilonMode { per_occurrence, per_keyphrase };

std::string_view to_string(EpsilonMode mode);
EpsilonMode parse_epsilon_mode(std::string_view name);

struct FirstOccurrence {
  std::size_t paragraph_index = 0;
  std::size_t rank = 0;  // 1-based

  auto operator<=>(const FirstOccurrence&) const = default;
};

struct ScoredKeyphrase {
  std::string key;      // evaluator normalization, space-joined
  std::string display;  // first surface form seen
  Rational score;
  std::size_t occurrences = 0;  // paragraphs that generated it
  FirstOccurrence first;
};

/// Aggregation identity shared with the evaluator: lowercase, punctuation to
/// space, whitespace split, single-space join. Empty for punctuation-only input.
std::string aggregation_key(std::string_view phrase);

/// Document-level inverse-rank fusion of per-paragraph ranked lists:
///
///   score(k) = sum over paragraphs p generating k of 1/rank(k, p) + eps,
///   eps = 1/(n+1)
///
/// In per_keyphrase mode eps is added once instead of per paragraph. Output is
/// sorted by score (descending), then by first occurrence (paragraph, rank),
/// and truncated to n. A key repeated inside one list counts at its best rank.
std::vector<ScoredKeyphrase> aggregate(std::span<const RankedKeyphrases> per_paragraph,
                                       std::size_t n,
                                       EpsilonMode mode = EpsilonMode::per_occurrence);

}  // namespace kpgen
