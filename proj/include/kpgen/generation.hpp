#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kpgen/codec.hpp"
#include "kpgen/segmenter.hpp"

namespace kpgen {

inline constexpr int kDefaultNumBeams = 20;
inline constexpr int kDefaultMaxKeyphrases = 10;
inline constexpr int kDefaultMaxTargetTokens = 128;

struct GenerationRequest {
  std::string text;
  int num_beams = kDefaultNumBeams;
  int num_return_sequences = kDefaultNumBeams;
  int max_keyphrases = kDefaultMaxKeyphrases;
  int max_target_tokens = kDefaultMaxTargetTokens;
};

struct GeneratedSequence {
  std::string text;
  double score = 0.0;

  bool operator==(const GeneratedSequence&) const = default;
};

/// Transport-level failure (connection refused, timeout, non-2xx). Retryable.
class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& message,
                        std::optional<std::size_t> paragraph = std::nullopt)
      : std::runtime_error(message), paragraph_(paragraph) {}
  std::optional<std::size_t> paragraph_index() const { return paragraph_; }

 private:
  std::optional<std::size_t> paragraph_;
};

/// The backend answered, but not in the wire schema.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ranked-sequence generator. `generate` must be safe to call concurrently
/// and returns sequences by descending model score.
class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;
  virtual std::vector<GeneratedSequence> generate(const GenerationRequest& request) const = 0;
  /// Token count under the model tokenizer, when the backend exposes one.
  virtual std::optional<std::size_t> count_tokens(std::string_view) const {
    return std::nullopt;
  }
};

/// Offline test double. Emits a single sequence `[w1, ..., wN]` holding the N
/// longest unique whitespace tokens of the input (length in code points, ties
/// alphabetical), with N = request.max_keyphrases.
class MockBackend final : public GenerationBackend {
 public:
  std::vector<GeneratedSequence> generate(const GenerationRequest& request) const override;
  std::optional<std::size_t> count_tokens(std::string_view text) const override;
};

/// TokenCounter backed by GenerationBackend::count_tokens.
class BackendTokenCounter final : public TokenCounter {
 public:
  explicit BackendTokenCounter(const GenerationBackend& backend) : backend_(backend) {}
  std::size_t count(std::string_view text) const override;

 private:
  const GenerationBackend& backend_;
};

enum class BeamMerge { all, top1 };

std::string_view to_string(BeamMerge mode);
BeamMerge parse_beam_merge(std::string_view name);

struct GenerationConfig {
  int num_beams = kDefaultNumBeams;
  int max_keyphrases = kDefaultMaxKeyphrases;
  int max_target_tokens = kDefaultMaxTargetTokens;
  BeamMerge beam_merge = BeamMerge::all;
};

struct RankedKeyphrases {
  std::size_t paragraph_index = 0;
  KeyphraseList phrases;  // rank = position + 1

  bool operator==(const RankedKeyphrases&) const = default;
};

/// Parses every returned sequence in score order, concatenates the phrases,
/// drops case-insensitive repeats and keeps the first `max_keyphrases`.
/// Transport failures are rethrown as BackendError tagged with the paragraph.
RankedKeyphrases generate_ranked_keyphrases(const GenerationBackend& backend,
                                            const Paragraph& paragraph,
                                            const GenerationConfig& config);

}  // namespace kpgen
