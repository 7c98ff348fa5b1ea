#include "kpgen/pipeline.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

namespace kpgen {

namespace {

RunStats summarize(const std::vector<DocumentResult>& results) {
  RunStats stats;
  for (const auto& r : results) {
    ++stats.docs_processed;
    stats.total_paragraphs += r.stats.paragraphs;
    stats.empty_generations += r.stats.empty_generations;
    if (r.stats.failed) {
      ++stats.docs_failed;
      stats.failed_ids.push_back(r.prediction.id);
      continue;
    }
    ++stats.paragraphs_histogram[r.stats.paragraphs];
    stats.total_keyphrases += r.prediction.keyphrases.size();
  }
  const auto succeeded = stats.docs_processed - stats.docs_failed;
  if (succeeded > 0) {
    stats.mean_keyphrases_per_doc =
        static_cast<double>(stats.total_keyphrases) / static_cast<double>(succeeded);
  }
  return stats;
}

SegmenterConfig segmenter_for(const PredictConfig& config) {
  SegmenterConfig seg;
  seg.budget = config.budget;
  if (config.token_counter) seg.counter = config.token_counter;
  return seg;
}

}  // namespace

void PredictConfig::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (num_beams < 1) throw ConfigError("num_beams must be at least 1");
  if (budget < 1) throw ConfigError("token budget must be at least 1");
  if (max_target_tokens < 1) throw ConfigError("max_target_tokens must be at least 1");
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
}

DocumentResult predict_document(const Document& doc, const GenerationBackend& backend,
                                const PredictConfig& config) {
  config.validate();
  DocumentResult result;
  result.prediction.id = doc.id;

  std::string source;
  try {
    source = build_source_text(doc);
  } catch (const std::invalid_argument& e) {
    result.stats.failed = true;
    result.stats.error = e.what();
    return result;
  }
  const auto paragraphs = segment(source, segmenter_for(config));
  result.stats.paragraphs = paragraphs.size();

  const GenerationConfig gen{config.num_beams, config.n, config.max_target_tokens,
                             config.beam_merge};
  std::vector<RankedKeyphrases> ranked;
  ranked.reserve(paragraphs.size());
  try {
    for (const auto& paragraph : paragraphs) {
      auto list = generate_ranked_keyphrases(backend, paragraph, gen);
      if (list.phrases.empty()) ++result.stats.empty_generations;
      ranked.push_back(std::move(list));
    }
  } catch (const BackendError& e) {
    result.stats.failed = true;
    result.stats.error = e.what();
    if (e.paragraph_index()) {
      result.stats.error += " (paragraph " + std::to_string(*e.paragraph_index()) + ")";
    }
    return result;
  } catch (const ProtocolError& e) {
    result.stats.failed = true;
    result.stats.error = e.what();
    return result;
  }

  for (auto& scored : aggregate(ranked, static_cast<std::size_t>(config.n), config.epsilon_mode)) {
    result.prediction.keyphrases.push_back(std::move(scored.display));
  }
  return result;
}

CorpusPrediction predict_corpus_serial(const std::vector<Document>& docs,
                                       const GenerationBackend& backend,
                                       const PredictConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  CorpusPrediction out;
  out.results.reserve(docs.size());
  for (const auto& doc : docs) out.results.push_back(predict_document(doc, backend, config));
  out.stats = summarize(out.results);
  out.stats.wall_clock = std::chrono::steady_clock::now() - start;
  return out;
}

CorpusPrediction predict_corpus(const std::vector<Document>& docs,
                                const GenerationBackend& backend, const PredictConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  CorpusPrediction out;
  out.results.resize(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.parallelism)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out.results[idx] = predict_document(docs[idx], backend, config);
    } catch (...) {
#pragma omp critical(kpgen_predict_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.stats = summarize(out.results);
  out.stats.wall_clock = std::chrono::steady_clock::now() - start;
  return out;
}

void write_predictions(std::ostream& out, const std::vector<DocumentResult>& results) {
  for (const auto& r : results) {
    if (!r.stats.failed) write_prediction(out, r.prediction);
  }
}

std::string stats_to_json(const RunStats& stats, const PredictConfig& config,
                          bool include_timing) {
  nlohmann::ordered_json histogram = nlohmann::ordered_json::object();
  for (const auto& [paragraphs, docs] : stats.paragraphs_histogram) {
    histogram[std::to_string(paragraphs)] = docs;
  }
  nlohmann::ordered_json out;
  out["config"] = {{"n", config.n},
                   {"num_beams", config.num_beams},
                   {"budget", config.budget},
                   {"max_target_tokens", config.max_target_tokens},
                   {"beam_merge", to_string(config.beam_merge)},
                   {"epsilon_mode", to_string(config.epsilon_mode)}};
  out["docs_processed"] = stats.docs_processed;
  out["docs_failed"] = stats.docs_failed;
  out["failed_ids"] = stats.failed_ids;
  out["paragraphs_total"] = stats.total_paragraphs;
  out["paragraphs_histogram"] = histogram;
  out["empty_generations"] = stats.empty_generations;
  out["keyphrases_total"] = stats.total_keyphrases;
  out["mean_keyphrases_per_doc"] = stats.mean_keyphrases_per_doc;
  if (include_timing) out["wall_clock_seconds"] = stats.wall_clock.count();
  return out.dump(2) + "\n";
}

}  // namespace kpgen
