#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kpgen/segmenter.hpp"

namespace kpgen {

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<std::string> gold;

  bool operator==(const Document&) const = default;
};

struct TrainingPair {
  std::string source;
  std::string target;
  std::string origin_doc_id;
  std::size_t paragraph_index = 0;

  bool operator==(const TrainingPair&) const = default;
};

/// Raised for problems that make a whole file unusable (unreadable file,
/// malformed JSON line).
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& message, std::size_t line)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A record that was skipped during loading.
struct RecordIssue {
  std::size_t line = 0;
  std::string message;
};

struct LoadedSplit {
  std::vector<Document> documents;
  std::vector<RecordIssue> issues;
};

/// Reads one JSONL split. `source_name` is used for synthesized ids
/// (`<source_name>:<line>`).
LoadedSplit parse_split(std::istream& in, std::string_view source_name);
LoadedSplit load_split(const std::string& path);

/// Title and abstract joined so the sentence splitter sees a boundary.
std::string build_source_text(const Document& doc);

struct PreparedPairs {
  std::vector<TrainingPair> pairs;
  std::size_t documents_used = 0;
  std::size_t skipped_empty_gold = 0;
  std::vector<std::string> skipped_invalid;  // ids with no usable source or gold
};

/// One pair per packed paragraph; every paragraph carries the full gold list.
PreparedPairs prepare_training_pairs(const std::vector<Document>& docs,
                                     const SegmenterConfig& segmenter);

void write_training_pair(std::ostream& out, const TrainingPair& pair);

}  // namespace kpgen
