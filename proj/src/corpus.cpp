#include "kpgen/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "kpgen/codec.hpp"
#include "kpgen/text.hpp"

namespace kpgen {

namespace {

using nlohmann::json;

struct RecordError {
  std::string message;
};

std::optional<std::string> optional_string(const json& record, const char* field) {
  const auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw RecordError{std::string("field '") + field + "' is not a string"};
  return it->get<std::string>();
}

std::vector<std::string> parse_keywords(const json& record) {
  std::vector<std::string> gold;
  const auto it = record.find("keywords");
  if (it == record.end() || it->is_null()) return gold;
  auto add = [&](std::string_view raw) {
    const auto trimmed = text::trim(raw);
    if (!trimmed.empty()) gold.emplace_back(trimmed);
  };
  if (it->is_string()) {
    const auto& joined = it->get_ref<const std::string&>();
    std::size_t start = 0;
    while (start <= joined.size()) {
      auto semi = joined.find(';', start);
      if (semi == std::string::npos) semi = joined.size();
      add(std::string_view(joined).substr(start, semi - start));
      start = semi + 1;
    }
  } else if (it->is_array()) {
    for (const auto& item : *it) {
      if (!item.is_string()) throw RecordError{"'keywords' array holds a non-string"};
      add(item.get_ref<const std::string&>());
    }
  } else {
    throw RecordError{"'keywords' must be a string or an array of strings"};
  }
  return gold;
}

}  // namespace

LoadedSplit parse_split(std::istream& in, std::string_view source_name) {
  LoadedSplit split;
  std::unordered_set<std::string> ids;
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
    if (!record.is_object()) throw CorpusError("record is not a JSON object", line_no);

    try {
      Document doc;
      const auto id = optional_string(record, "id");
      doc.id = id && !id->empty() ? *id
                                  : std::string(source_name) + ":" + std::to_string(line_no);
      const auto title = optional_string(record, "title");
      const auto abstract = optional_string(record, "abstract");
      if (text::trim(title.value_or("")).empty() && text::trim(abstract.value_or("")).empty()) {
        throw RecordError{"record has neither 'title' nor 'abstract'"};
      }
      doc.title = title.value_or("");
      doc.abstract = abstract.value_or("");
      doc.gold = parse_keywords(record);
      if (!ids.insert(doc.id).second) throw RecordError{"duplicate id '" + doc.id + "'"};
      split.documents.push_back(std::move(doc));
    } catch (const RecordError& e) {
      split.issues.push_back({line_no, e.message});
    }
  }
  return split;
}

LoadedSplit load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open " + path, 0);
  return parse_split(in, std::filesystem::path(path).filename().string());
}

std::string build_source_text(const Document& doc) {
  const auto title = text::trim(doc.title);
  const auto abstract = text::trim(doc.abstract);
  if (title.empty() && abstract.empty()) {
    throw std::invalid_argument("document '" + doc.id + "' has no title and no abstract");
  }
  if (title.empty()) return std::string(abstract);
  if (abstract.empty()) return std::string(title);
  const char last = title.back();
  const bool terminated = last == '.' || last == '!' || last == '?';
  return std::string(title) + (terminated ? " " : ". ") + std::string(abstract);
}

PreparedPairs prepare_training_pairs(const std::vector<Document>& docs,
                                     const SegmenterConfig& segmenter) {
  if (segmenter.budget < 1) throw ConfigError("token budget must be at least 1");
  PreparedPairs out;
  for (const auto& doc : docs) {
    if (doc.gold.empty()) {
      ++out.skipped_empty_gold;
      continue;
    }
    std::string target;
    std::string source;
    try {
      target = serialize_keyphrases(doc.gold);
      source = build_source_text(doc);
    } catch (const std::invalid_argument&) {
      out.skipped_invalid.push_back(doc.id);
      continue;
    }
    for (auto& paragraph : segment(source, segmenter)) {
      out.pairs.push_back({std::move(paragraph.text), target, doc.id, paragraph.index});
    }
    ++out.documents_used;
  }
  return out;
}

void write_training_pair(std::ostream& out, const TrainingPair& pair) {
  const nlohmann::ordered_json record = {{"source", pair.source},
                       {"target", pair.target},
                       {"origin_doc_id", pair.origin_doc_id},
                       {"paragraph_index", pair.paragraph_index}};
  out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

}  // namespace kpgen
