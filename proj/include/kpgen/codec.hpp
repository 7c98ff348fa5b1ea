#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Target-sequence codec. Keyphrases travel as `[k1, k2, ..., km]` using only
// the plain characters `[`, `,` and `]` as structure.
namespace kpgen {

using KeyphraseList = std::vector<std::string>;

class CodecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replaces `[`, `]` and `,` with spaces, collapses whitespace runs and trims.
std::string sanitize_phrase(std::string_view phrase);

/// Key used for case-insensitive duplicate detection.
std::string dedup_key(std::string_view phrase);

/// Sanitizes every phrase, drops the ones that become empty and removes
/// case-insensitive duplicates (first surface form wins).
KeyphraseList canonicalize_keyphrases(std::span<const std::string> phrases);

/// Returns `[` + phrases joined by `, ` + `]`. Throws CodecError when nothing
/// survives canonicalization.
std::string serialize_keyphrases(std::span<const std::string> phrases);

/// Total parser for model output: never throws, may return an empty list.
KeyphraseList parse_generated(std::string_view text);

}  // namespace kpgen
