#include "kpgen/codec.hpp"

#include <unordered_set>

#include "kpgen/text.hpp"

namespace kpgen {

namespace {

bool is_structural(char c) { return c == '[' || c == ']' || c == ','; }

void append_unique(KeyphraseList& out, std::unordered_set<std::string>& seen,
                   std::string phrase) {
  if (phrase.empty()) return;
  if (seen.insert(dedup_key(phrase)).second) out.push_back(std::move(phrase));
}

}  // namespace

std::string sanitize_phrase(std::string_view phrase) {
  std::string replaced(phrase);
  for (char& c : replaced) {
    if (is_structural(c)) c = ' ';
  }
  return text::collapse_whitespace(replaced);
}

std::string dedup_key(std::string_view phrase) { return text::lowercase(phrase); }

KeyphraseList canonicalize_keyphrases(std::span<const std::string> phrases) {
  KeyphraseList out;
  std::unordered_set<std::string> seen;
  for (const auto& p : phrases) append_unique(out, seen, sanitize_phrase(p));
  return out;
}

std::string serialize_keyphrases(std::span<const std::string> phrases) {
  const auto canonical = canonicalize_keyphrases(phrases);
  if (canonical.empty()) {
    throw CodecError("cannot serialize an empty keyphrase list");
  }
  std::string out = "[";
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    if (i > 0) out += ", ";
    out += canonical[i];
  }
  out += ']';
  return out;
}

KeyphraseList parse_generated(std::string_view text) {
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  const std::size_t begin = open == std::string_view::npos ? 0 : open + 1;
  std::size_t end = text.size();
  if (close != std::string_view::npos && close >= begin) end = close;
  const auto body = text.substr(begin, end - begin);

  KeyphraseList out;
  std::unordered_set<std::string> seen;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    // Stray brackets inside the body cannot survive into a phrase.
    append_unique(out, seen, sanitize_phrase(body.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace kpgen
