#include "kpgen/evaluator.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "kpgen/porter.hpp"
#include "kpgen/segmenter.hpp"
#include "kpgen/text.hpp"

namespace kpgen {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool contains_run(const std::vector<std::string>& haystack,
                  const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

// One-to-one matches between the first `k` predictions and gold.
std::size_t count_matches(std::span<const NormalizedPhrase> kept,
                          std::span<const NormalizedPhrase> gold) {
  std::map<NormalizedPhrase, std::size_t> available;
  for (const auto& g : gold) {
    if (!g.empty()) ++available[g];
  }
  std::size_t tp = 0;
  for (const auto& p : kept) {
    if (p.empty()) continue;
    const auto it = available.find(p);
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++tp;
    }
  }
  return tp;
}

std::vector<NormalizedPhrase> normalize_all(std::span<const std::string> phrases, Stemming stem) {
  std::vector<NormalizedPhrase> out;
  out.reserve(phrases.size());
  for (const auto& p : phrases) out.push_back(normalize(p, stem));
  return out;
}

Rational f_score(std::size_t tp, std::size_t precision_den, std::size_t gold_size) {
  if (tp == 0 || precision_den == 0) return Rational(0);
  // 2PR/(P+R) with P = tp/pd and R = tp/g reduces to 2tp/(pd+g).
  return Rational(2 * static_cast<long long>(tp),
                  static_cast<long long>(precision_den + gold_size));
}

Rational f_normalized(std::span<const NormalizedPhrase> preds,
                      std::span<const NormalizedPhrase> gold, std::size_t k,
                      PrecisionDenominator denominator) {
  const auto kept = preds.first(std::min(k, preds.size()));
  const auto tp = count_matches(kept, gold);
  const auto pd = denominator == PrecisionDenominator::kept ? kept.size() : k;
  return f_score(tp, pd, gold.size());
}

Rational recall_normalized(std::span<const NormalizedPhrase> preds,
                           std::span<const NormalizedPhrase> gold, std::size_t k) {
  const auto kept = preds.first(std::min(k, preds.size()));
  return Rational(static_cast<long long>(count_matches(kept, gold)),
                  static_cast<long long>(gold.size()));
}

void check_k(std::size_t k) {
  if (k < 1) throw std::invalid_argument("metric cutoff k must be at least 1");
}

// Splits already-normalized phrases by presence in `source`, dropping empties.
void split_by_presence(const std::vector<NormalizedPhrase>& phrases,
                       const std::vector<std::string>& source,
                       std::vector<NormalizedPhrase>& present,
                       std::vector<NormalizedPhrase>& absent) {
  for (const auto& p : phrases) {
    if (p.empty()) continue;
    (contains_run(source, p.tokens) ? present : absent).push_back(p);
  }
}

std::unordered_map<std::string, std::span<const std::string>> index_predictions(
    std::span<const Prediction> predictions, std::span<const Document> gold) {
  std::unordered_set<std::string> gold_ids;
  for (const auto& d : gold) gold_ids.insert(d.id);
  std::unordered_map<std::string, std::span<const std::string>> by_id;
  std::vector<std::string> unknown;
  std::vector<std::string> repeated;
  for (const auto& p : predictions) {
    if (!gold_ids.contains(p.id)) {
      unknown.push_back(p.id);
      continue;
    }
    if (!by_id.emplace(p.id, p.keyphrases).second) repeated.push_back(p.id);
  }
  if (!unknown.empty()) {
    std::string msg = "predictions for unknown document ids:";
    for (const auto& id : unknown) msg += " " + id;
    throw EvaluationError(msg, unknown);
  }
  if (!repeated.empty()) {
    std::string msg = "repeated prediction ids:";
    for (const auto& id : repeated) msg += " " + id;
    throw EvaluationError(msg, repeated);
  }
  return by_id;
}

EvalReport reduce(std::span<const DocumentScores> scores, const EvalConfig& config) {
  EvalReport report;
  report.config = config;
  report.total_docs = scores.size();
  Rational f_small_sum;
  Rational f_large_sum;
  Rational recall_sum;
  for (const auto& s : scores) {
    if (s.present_f_small) {
      ++report.present_evaluated;
      f_small_sum += *s.present_f_small;
      f_large_sum += *s.present_f_large;
    } else {
      ++report.present_skipped;
    }
    if (s.absent_recall) {
      ++report.absent_evaluated;
      recall_sum += *s.absent_recall;
    } else {
      ++report.absent_skipped;
    }
  }
  if (report.present_evaluated > 0) {
    const Rational n(static_cast<long long>(report.present_evaluated));
    report.present_f_small = f_small_sum / n;
    report.present_f_large = f_large_sum / n;
  }
  if (report.absent_evaluated > 0) {
    report.absent_recall = recall_sum / Rational(static_cast<long long>(report.absent_evaluated));
  }
  return report;
}

void validate(const EvalConfig& config) {
  check_k(config.present_k_small);
  check_k(config.present_k_large);
  check_k(config.absent_k);
  if (config.parallelism < 1) throw ConfigError("parallelism must be at least 1");
}

}  // namespace

std::string_view to_string(Stemming s) { return s == Stemming::none ? "none" : "porter"; }

Stemming parse_stemming(std::string_view name) {
  if (name == "none") return Stemming::none;
  if (name == "porter") return Stemming::porter;
  throw ConfigError("unknown stemmer '" + std::string(name) + "'");
}

std::string_view to_string(PrecisionDenominator d) {
  return d == PrecisionDenominator::kept ? "kept" : "k";
}

PrecisionDenominator parse_precision_denominator(std::string_view name) {
  if (name == "kept") return PrecisionDenominator::kept;
  if (name == "k") return PrecisionDenominator::k;
  throw ConfigError("unknown precision denominator '" + std::string(name) + "'");
}

NormalizedPhrase normalize(std::string_view input, Stemming stem) {
  std::string spaced;
  spaced.reserve(input.size());
  std::size_t pos = 0;
  while (pos < input.size()) {
    const auto start = pos;
    const char32_t cp = text::decode_utf8(input, pos);
    if (text::is_punctuation(cp)) {
      spaced.push_back(' ');
    } else {
      spaced.append(input.substr(start, pos - start));
    }
  }
  NormalizedPhrase out{text::split_whitespace(text::lowercase(spaced))};
  if (stem == Stemming::porter) {
    for (auto& token : out.tokens) token = porter_stem(token);
  }
  return out;
}

PresentAbsent partition_present_absent(std::span<const std::string> phrases,
                                       std::string_view source_text, Stemming stem) {
  const auto source = normalize(source_text, stem).tokens;
  PresentAbsent out;
  for (const auto& phrase : phrases) {
    const auto norm = normalize(phrase, stem);
    if (norm.empty()) continue;
    (contains_run(source, norm.tokens) ? out.present : out.absent).push_back(phrase);
  }
  return out;
}

Rational f_at_k(std::span<const std::string> predictions, std::span<const std::string> gold,
                std::size_t k, const MatchOptions& options) {
  check_k(k);
  if (gold.empty()) throw std::invalid_argument("f_at_k: gold list is empty");
  const auto p = normalize_all(predictions, options.stem);
  const auto g = normalize_all(gold, options.stem);
  return f_normalized(p, g, k, options.precision_denominator);
}

Rational recall_at_k(std::span<const std::string> predictions, std::span<const std::string> gold,
                     std::size_t k, Stemming stem) {
  check_k(k);
  if (gold.empty()) throw std::invalid_argument("recall_at_k: gold list is empty");
  return recall_normalized(normalize_all(predictions, stem), normalize_all(gold, stem), k);
}

void write_prediction(std::ostream& out, const Prediction& prediction) {
  const ordered_json record = {{"id", prediction.id}, {"keyphrases", prediction.keyphrases}};
  out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    const auto id = record.is_object() ? record.find("id") : record.end();
    const auto kps = record.is_object() ? record.find("keyphrases") : record.end();
    if (id == record.end() || !id->is_string() || kps == record.end() || !kps->is_array()) {
      throw CorpusError("prediction needs string 'id' and array 'keyphrases'", line_no);
    }
    Prediction p{id->get<std::string>(), {}};
    for (const auto& k : *kps) {
      if (!k.is_string()) throw CorpusError("non-string keyphrase", line_no);
      p.keyphrases.push_back(k.get<std::string>());
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open " + path, 0);
  return read_predictions(in);
}

DocumentScores score_document(const Document& doc, std::span<const std::string> predictions,
                              const EvalConfig& config) {
  const auto source = normalize(build_source_text(doc), config.stem).tokens;
  std::vector<NormalizedPhrase> gold_present, gold_absent, pred_present, pred_absent;
  split_by_presence(normalize_all(doc.gold, config.stem), source, gold_present, gold_absent);
  split_by_presence(normalize_all(predictions, config.stem), source, pred_present, pred_absent);

  DocumentScores scores;
  if (!gold_present.empty()) {
    scores.present_f_small = f_normalized(pred_present, gold_present, config.present_k_small,
                                          config.precision_denominator);
    scores.present_f_large = f_normalized(pred_present, gold_present, config.present_k_large,
                                          config.precision_denominator);
  }
  if (!gold_absent.empty()) {
    scores.absent_recall = recall_normalized(pred_absent, gold_absent, config.absent_k);
  }
  return scores;
}

EvalReport evaluate_dataset_serial(std::span<const Prediction> predictions,
                                   std::span<const Document> gold, const EvalConfig& config) {
  validate(config);
  const auto by_id = index_predictions(predictions, gold);
  std::vector<DocumentScores> scores;
  scores.reserve(gold.size());
  for (const auto& doc : gold) {
    const auto it = by_id.find(doc.id);
    scores.push_back(score_document(
        doc, it == by_id.end() ? std::span<const std::string>{} : it->second, config));
  }
  return reduce(scores, config);
}

EvalReport evaluate_dataset(std::span<const Prediction> predictions,
                            std::span<const Document> gold, const EvalConfig& config) {
  validate(config);
  const auto by_id = index_predictions(predictions, gold);
  std::vector<DocumentScores> scores(gold.size());
  const auto n = static_cast<std::ptrdiff_t>(gold.size());
  // Exceptions cannot cross the parallel region; capture the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(config.parallelism)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto& doc = gold[static_cast<std::size_t>(i)];
      const auto it = by_id.find(doc.id);
      scores[static_cast<std::size_t>(i)] = score_document(
          doc, it == by_id.end() ? std::span<const std::string>{} : it->second, config);
    } catch (...) {
#pragma omp critical(kpgen_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reduce(scores, config);
}

std::string report_to_json(const EvalReport& r) {
  auto metric = [](const Rational& value) {
    return ordered_json{{"value", to_double(value)}, {"exact", to_fraction_string(value)}};
  };
  const auto& c = r.config;
  ordered_json out;
  out["config"] = {{"stem", to_string(c.stem)},
                   {"precision_denominator", to_string(c.precision_denominator)},
                   {"present_k", {c.present_k_small, c.present_k_large}},
                   {"absent_k", c.absent_k}};
  out["total_docs"] = r.total_docs;
  out["present"] = {{"f_at_" + std::to_string(c.present_k_small), metric(r.present_f_small)},
                    {"f_at_" + std::to_string(c.present_k_large), metric(r.present_f_large)},
                    {"docs_evaluated", r.present_evaluated},
                    {"docs_skipped", r.present_skipped}};
  out["absent"] = {{"r_at_" + std::to_string(c.absent_k), metric(r.absent_recall)},
                   {"docs_evaluated", r.absent_evaluated},
                   {"docs_skipped", r.absent_skipped}};
  return out.dump(2) + "\n";
}

std::string format_report_table(const EvalReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "partition  metric  value   docs(eval/skip)\n";
  os << "present    F@" << std::left << std::setw(4) << r.config.present_k_small << std::right
     << " " << to_double(r.present_f_small) << "  " << r.present_evaluated << "/"
     << r.present_skipped << "\n";
  os << "present    F@" << std::left << std::setw(4) << r.config.present_k_large << std::right
     << " " << to_double(r.present_f_large) << "  " << r.present_evaluated << "/"
     << r.present_skipped << "\n";
  os << "absent     R@" << std::left << std::setw(4) << r.config.absent_k << std::right << " "
     << to_double(r.absent_recall) << "  " << r.absent_evaluated << "/" << r.absent_skipped
     << "\n";
  return os.str();
}

}  // namespace kpgen
