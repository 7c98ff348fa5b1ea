#include "kpgen/segmenter.hpp"

#include <fstream>
#include <sstream>

#include "kpgen/text.hpp"

namespace kpgen {

namespace detail {
extern const std::string_view kAbbreviationData;
}

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool starts_sentence(char32_t cp) {
  if (cp == '(' || cp == '[' || cp == '{' || cp == '"' || cp == '\'') return true;
  if (cp == 0x201C || cp == 0x2018) return true;
  if (cp >= '0' && cp <= '9') return true;
  return text::is_upper(cp);
}

std::string join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  return a + " " + b;
}

// Splits one oversized sentence into maximal pieces that each fit `budget`.
std::vector<std::string> hard_split(const std::string& sentence,
                                    const TokenCounter& counter, std::size_t budget) {
  std::vector<std::string> pieces;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) pieces.push_back(std::exchange(current, {}));
  };
  for (const auto& word : text::split_whitespace(sentence)) {
    auto candidate = join(current, word);
    if (counter.count(candidate) <= budget) {
      current = std::move(candidate);
      continue;
    }
    flush();
    if (counter.count(word) <= budget) {
      current = word;
      continue;
    }
    // A single word the counter cannot fit: fall back to code points.
    std::size_t pos = 0;
    while (pos < word.size()) {
      const auto start = pos;
      text::decode_utf8(word, pos);
      auto grown = current + word.substr(start, pos - start);
      if (counter.count(grown) <= budget) {
        current = std::move(grown);
        continue;
      }
      if (current.empty()) {
        throw ConfigError("token budget " + std::to_string(budget) +
                          " cannot hold a single character");
      }
      flush();
      current = word.substr(start, pos - start);
    }
  }
  flush();
  return pieces;
}

}  // namespace

std::size_t WhitespaceTokenCounter::count(std::string_view text) const {
  return text::split_whitespace(text).size();
}

const AbbreviationList& AbbreviationList::builtin() {
  static const AbbreviationList list = parse(detail::kAbbreviationData);
  return list;
}

AbbreviationList AbbreviationList::parse(std::string_view contents) {
  AbbreviationList list;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    const auto entry = text::trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    list.entries_.push_back(text::lowercase(entry));
  }
  return list;
}

AbbreviationList AbbreviationList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read abbreviation list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool AbbreviationList::guards(std::string_view prefix) const {
  const auto lower = text::lowercase(prefix);
  for (const auto& abbr : entries_) {
    if (lower.size() < abbr.size()) continue;
    if (lower.compare(lower.size() - abbr.size(), abbr.size(), abbr) != 0) continue;
    const auto at = lower.size() - abbr.size();
    if (at == 0) return true;
    const char before = lower[at - 1];
    if (before == ' ' || before == '\t' || before == '\n' || before == '\r' ||
        before == '(' || before == '[' || before == '"') {
      return true;
    }
  }
  return false;
}

std::vector<std::string> split_sentences(std::string_view input,
                                         const AbbreviationList& abbreviations) {
  std::vector<std::string> sentences;
  auto emit = [&](std::string_view piece) {
    const auto trimmed = text::trim(piece);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
  };

  std::size_t sentence_start = 0;
  std::size_t i = 0;
  while (i < input.size()) {
    if (!is_terminal(input[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < input.size() && (is_terminal(input[end]) || is_closer(input[end]))) {
      ++end;
    }
    // Need at least one whitespace code point after the punctuation run.
    std::size_t next = end;
    bool saw_space = false;
    while (next < input.size()) {
      std::size_t pos = next;
      if (!text::is_space(text::decode_utf8(input, pos))) break;
      saw_space = true;
      next = pos;
    }
    if (!saw_space || next >= input.size()) {
      i = end;
      continue;
    }
    std::size_t pos = next;
    if (!starts_sentence(text::decode_utf8(input, pos))) {
      i = end;
      continue;
    }
    if (input[i] == '.' && end == i + 1 &&
        abbreviations.guards(input.substr(sentence_start, end - sentence_start))) {
      i = end;
      continue;
    }
    emit(input.substr(sentence_start, end - sentence_start));
    sentence_start = next;
    i = next;
  }
  emit(input.substr(sentence_start));
  return sentences;
}

std::vector<Paragraph> pack_paragraphs(const std::vector<std::string>& sentences,
                                       const TokenCounter& counter, std::size_t budget) {
  if (budget < 1) throw ConfigError("token budget must be at least 1");

  std::vector<Paragraph> paragraphs;
  std::string current;
  std::size_t current_count = 0;
  auto flush = [&] {
    if (current.empty()) return;
    paragraphs.push_back({std::exchange(current, {}), paragraphs.size(), current_count});
    current_count = 0;
  };

  for (const auto& sentence : sentences) {
    if (text::trim(sentence).empty()) continue;
    auto candidate = join(current, sentence);
    const auto candidate_count = counter.count(candidate);
    if (candidate_count <= budget) {
      current = std::move(candidate);
      current_count = candidate_count;
      continue;
    }
    flush();
    const auto alone = counter.count(sentence);
    if (alone <= budget) {
      current = sentence;
      current_count = alone;
      continue;
    }
    for (auto& piece : hard_split(sentence, counter, budget)) {
      current_count = counter.count(piece);
      current = std::move(piece);
      flush();
    }
  }
  flush();
  return paragraphs;
}

std::vector<Paragraph> segment(std::string_view text, const SegmenterConfig& config) {
  if (!config.counter) throw ConfigError("segmenter has no token counter");
  const auto& abbreviations =
      config.abbreviations ? *config.abbreviations : AbbreviationList::builtin();
  return pack_paragraphs(split_sentences(text, abbreviations), *config.counter,
                         config.budget);
}

}  // namespace kpgen
