#include "kpgen/generation.hpp"

#include <algorithm>
#include <unordered_set>

#include "kpgen/text.hpp"

namespace kpgen {

std::vector<GeneratedSequence> MockBackend::generate(const GenerationRequest& request) const {
  auto tokens = text::split_whitespace(request.text);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  std::vector<std::pair<std::size_t, std::string>> by_length;
  by_length.reserve(tokens.size());
  for (auto& t : tokens) by_length.emplace_back(text::count_code_points(t), std::move(t));
  std::stable_sort(by_length.begin(), by_length.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  const auto n = static_cast<std::size_t>(std::max(request.max_keyphrases, 0));
  std::string out = "[";
  for (std::size_t i = 0; i < std::min(n, by_length.size()); ++i) {
    if (i > 0) out += ", ";
    out += by_length[i].second;
  }
  out += ']';
  return {{std::move(out), 0.0}};
}

std::optional<std::size_t> MockBackend::count_tokens(std::string_view text) const {
  return text::split_whitespace(text).size();
}

std::size_t BackendTokenCounter::count(std::string_view text) const {
  const auto n = backend_.count_tokens(text);
  if (!n) throw ConfigError("backend does not support token counting");
  return *n;
}

std::string_view to_string(BeamMerge mode) {
  return mode == BeamMerge::all ? "all" : "top1";
}

BeamMerge parse_beam_merge(std::string_view name) {
  if (name == "all") return BeamMerge::all;
  if (name == "top1") return BeamMerge::top1;
  throw ConfigError("unknown beam merge mode '" + std::string(name) + "'");
}

RankedKeyphrases generate_ranked_keyphrases(const GenerationBackend& backend,
                                            const Paragraph& paragraph,
                                            const GenerationConfig& config) {
  if (config.num_beams < 1 || config.max_keyphrases < 1) {
    throw ConfigError("num_beams and max_keyphrases must be at least 1");
  }
  GenerationRequest request;
  request.text = paragraph.text;
  request.num_beams = config.num_beams;
  request.num_return_sequences = config.beam_merge == BeamMerge::all ? config.num_beams : 1;
  request.max_keyphrases = config.max_keyphrases;
  request.max_target_tokens = config.max_target_tokens;

  std::vector<GeneratedSequence> sequences;
  try {
    sequences = backend.generate(request);
  } catch (const BackendError& e) {
    throw BackendError(e.what(), paragraph.index);
  }
  std::stable_sort(sequences.begin(), sequences.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  if (config.beam_merge == BeamMerge::top1 && sequences.size() > 1) sequences.resize(1);

  const auto limit = static_cast<std::size_t>(config.max_keyphrases);
  RankedKeyphrases ranked{paragraph.index, {}};
  std::unordered_set<std::string> seen;
  for (const auto& seq : sequences) {
    for (auto& phrase : parse_generated(seq.text)) {
      if (ranked.phrases.size() == limit) return ranked;
      if (seen.insert(dedup_key(phrase)).second) ranked.phrases.push_back(std::move(phrase));
    }
  }
  return ranked;
}

}  // namespace kpgen
