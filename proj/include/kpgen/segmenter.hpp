#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kpgen {

/// Encoder limit is 1024 tokens; 10 are held back for model boundary tokens.
inline constexpr std::size_t kDefaultTokenBudget = 1014;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Counts tokens the way the downstream encoder would. Implementations must be
/// callable concurrently.
class TokenCounter {
 public:
  virtual ~TokenCounter() = default;
  virtual std::size_t count(std::string_view text) const = 0;
};

class WhitespaceTokenCounter final : public TokenCounter {
 public:
  std::size_t count(std::string_view text) const override;
};

struct Paragraph {
  std::string text;
  std::size_t index = 0;
  std::size_t token_count = 0;

  bool operator==(const Paragraph&) const = default;
};

/// Abbreviations that end in '.' but never close a sentence.
class AbbreviationList {
 public:
  /// The list shipped in data/abbreviations.txt.
  static const AbbreviationList& builtin();
  /// One abbreviation per line; blank lines and `#` comments are ignored.
  static AbbreviationList parse(std::string_view contents);
  static AbbreviationList load(const std::string& path);

  /// True when `prefix` ends with a listed abbreviation that starts at a word
  /// boundary. `prefix` must end with the candidate '.'.
  bool guards(std::string_view prefix) const;

  const std::vector<std::string>& entries() const { return entries_; }

 private:
  std::vector<std::string> entries_;  // lowercased
};

/// Rule-based splitter: a boundary is `.`, `!` or `?` (optionally followed by
/// closing quotes/brackets), then whitespace, then an uppercase letter, digit
/// or opening bracket/quote. Sentences are trimmed; no other character is
/// dropped.
std::vector<std::string> split_sentences(
    std::string_view text,
    const AbbreviationList& abbreviations = AbbreviationList::builtin());

/// Greedy left-to-right packing of consecutive sentences under `budget`,
/// measured on the joined paragraph text. Sentences over budget are hard
/// split into maximal word runs (code points for a single oversized word).
std::vector<Paragraph> pack_paragraphs(const std::vector<std::string>& sentences,
                                       const TokenCounter& counter,
                                       std::size_t budget);

struct SegmenterConfig {
  std::size_t budget = kDefaultTokenBudget;
  std::shared_ptr<const TokenCounter> counter =
      std::make_shared<WhitespaceTokenCounter>();
  const AbbreviationList* abbreviations = &AbbreviationList::builtin();
};

/// split_sentences followed by pack_paragraphs.
std::vector<Paragraph> segment(std::string_view text, const SegmenterConfig& config);

}  // namespace kpgen
