#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kpgen/aggregator.hpp"
#include "kpgen/corpus.hpp"
#include "kpgen/evaluator.hpp"
#include "kpgen/generation.hpp"
#include "kpgen/segmenter.hpp"

namespace kpgen {

struct PredictConfig {
  int n = kDefaultMaxKeyphrases;
  int num_beams = kDefaultNumBeams;
  std::size_t budget = kDefaultTokenBudget;
  int max_target_tokens = kDefaultMaxTargetTokens;
  BeamMerge beam_merge = BeamMerge::all;
  EpsilonMode epsilon_mode = EpsilonMode::per_occurrence;
  int parallelism = 4;
  /// Whitespace counting when null.
  std::shared_ptr<const TokenCounter> token_counter;

  void validate() const;
};

struct DocumentStats {
  std::size_t paragraphs = 0;
  std::size_t empty_generations = 0;
  bool failed = false;
  std::string error;
};

struct DocumentResult {
  Prediction prediction;
  DocumentStats stats;
};

struct RunStats {
  std::size_t docs_processed = 0;
  std::size_t docs_failed = 0;
  std::vector<std::string> failed_ids;
  std::map<std::size_t, std::size_t> paragraphs_histogram;  // paragraphs -> docs
  std::size_t total_paragraphs = 0;
  std::size_t empty_generations = 0;
  std::size_t total_keyphrases = 0;
  double mean_keyphrases_per_doc = 0.0;
  std::chrono::duration<double> wall_clock{0};
};

/// source text -> sentences -> paragraphs -> ranked lists -> aggregate -> top-n
/// display forms. Backend failures mark the document failed instead of
/// throwing; configuration errors still throw.
DocumentResult predict_document(const Document& doc, const GenerationBackend& backend,
                                const PredictConfig& config);

struct CorpusPrediction {
  std::vector<DocumentResult> results;  // input order
  RunStats stats;
};

/// Runs up to `config.parallelism` documents at once (OpenMP). Results keep
/// input order regardless of scheduling.
CorpusPrediction predict_corpus(const std::vector<Document>& docs,
                                const GenerationBackend& backend, const PredictConfig& config);

/// Single-threaded reference for predict_corpus.
CorpusPrediction predict_corpus_serial(const std::vector<Document>& docs,
                                       const GenerationBackend& backend,
                                       const PredictConfig& config);

/// Writes one line per successful document, in input order.
void write_predictions(std::ostream& out, const std::vector<DocumentResult>& results);

/// Stats plus the active configuration. `include_timing` false drops the
/// wall-clock field so the output is byte-reproducible.
std::string stats_to_json(const RunStats& stats, const PredictConfig& config,
                          bool include_timing = true);

}  // namespace kpgen
