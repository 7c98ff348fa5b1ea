#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpgen/corpus.hpp"
#include "kpgen/rational.hpp"

namespace kpgen {

enum class Stemming { none, porter };
enum class PrecisionDenominator { kept, k };

std::string_view to_string(Stemming s);
Stemming parse_stemming(std::string_view name);
std::string_view to_string(PrecisionDenominator d);
PrecisionDenominator parse_precision_denominator(std::string_view name);

struct NormalizedPhrase {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  bool operator==(const NormalizedPhrase&) const = default;
  auto operator<=>(const NormalizedPhrase&) const = default;
};

/// Punctuation to space, lowercase, split on whitespace runs, optional stem.
NormalizedPhrase normalize(std::string_view text, Stemming stem = Stemming::none);

struct PresentAbsent {
  std::vector<std::string> present;
  std::vector<std::string> absent;
};

/// A phrase is present iff its normalized tokens occur contiguously in the
/// normalized source. Phrases that normalize to nothing are dropped.
PresentAbsent partition_present_absent(std::span<const std::string> phrases,
                                       std::string_view source_text,
                                       Stemming stem = Stemming::none);

struct MatchOptions {
  Stemming stem = Stemming::none;
  PrecisionDenominator precision_denominator = PrecisionDenominator::kept;
};

/// F-score over the first min(k, |predictions|) predictions, one-to-one
/// matching on normalized form. `gold` must be non-empty.
Rational f_at_k(std::span<const std::string> predictions, std::span<const std::string> gold,
                std::size_t k, const MatchOptions& options = {});

Rational recall_at_k(std::span<const std::string> predictions, std::span<const std::string> gold,
                     std::size_t k, Stemming stem = Stemming::none);

/// Ordered keyphrases predicted for one document.
struct Prediction {
  std::string id;
  std::vector<std::string> keyphrases;

  bool operator==(const Prediction&) const = default;
};

void write_prediction(std::ostream& out, const Prediction& prediction);
/// Throws CorpusError (with line number) on malformed lines.
std::vector<Prediction> read_predictions(std::istream& in);
std::vector<Prediction> load_predictions(const std::string& path);

struct EvalConfig {
  Stemming stem = Stemming::none;
  PrecisionDenominator precision_denominator = PrecisionDenominator::kept;
  std::size_t present_k_small = 5;
  std::size_t present_k_large = 10;
  std::size_t absent_k = 10;
  int parallelism = 1;
};

/// Per-document metrics; empty when the relevant gold partition is empty.
struct DocumentScores {
  std::optional<Rational> present_f_small;
  std::optional<Rational> present_f_large;
  std::optional<Rational> absent_recall;
};

DocumentScores score_document(const Document& doc, std::span<const std::string> predictions,
                              const EvalConfig& config);

struct EvalReport {
  EvalConfig config;
  std::size_t total_docs = 0;
  std::size_t present_evaluated = 0;
  std::size_t present_skipped = 0;
  std::size_t absent_evaluated = 0;
  std::size_t absent_skipped = 0;
  Rational present_f_small;  // macro F@5 by default
  Rational present_f_large;  // macro F@10
  Rational absent_recall;    // macro R@10
};

class EvaluationError : public std::invalid_argument {
 public:
  EvaluationError(const std::string& message, std::vector<std::string> ids)
      : std::invalid_argument(message), ids_(std::move(ids)) {}
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

/// Macro-averaged report. Documents run in parallel across
/// `config.parallelism` OpenMP threads; gold documents without a prediction
/// count as empty predictions. Throws EvaluationError for unknown or repeated
/// prediction ids.
EvalReport evaluate_dataset(std::span<const Prediction> predictions,
                            std::span<const Document> gold, const EvalConfig& config);

/// Single-threaded reference for evaluate_dataset.
EvalReport evaluate_dataset_serial(std::span<const Prediction> predictions,
                                   std::span<const Document> gold, const EvalConfig& config);

std::string report_to_json(const EvalReport& report);
std::string format_report_table(const EvalReport& report);

}  // namespace kpgen
