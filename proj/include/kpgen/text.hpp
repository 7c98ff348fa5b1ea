#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Byte-level and code-point-level text helpers shared by the codec, the
// segmenter and the evaluator. Everything here is pure and locale-free, so
// results are identical across platforms.
namespace kpgen::text {

/// Decodes one UTF-8 code point starting at `pos` and advances `pos`.
/// Malformed sequences decode to U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

/// Python `str.isspace()` semantics for the characters that matter here.
bool is_space(char32_t cp);

/// Unicode general category P* (major blocks) plus every ASCII symbol in
/// `!"#$%&'()*+,-./:;<=>?@[\]^_`{|}~`.
bool is_punctuation(char32_t cp);

bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);

/// Simple case folding over ASCII, Latin-1, Latin Extended-A, Greek and
/// Cyrillic. Other code points pass through unchanged.
std::string lowercase(std::string_view s);

std::string_view trim(std::string_view s);

/// Replaces whitespace runs with one ASCII space and trims both ends.
std::string collapse_whitespace(std::string_view s);

/// Splits on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

std::size_t count_code_points(std::string_view s);

}  // namespace kpgen::text
