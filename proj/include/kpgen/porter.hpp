#pragma once

#include <string>
#include <string_view>

namespace kpgen {

/// Porter (1980) suffix-stripping stemmer, original algorithm. Expects a
/// lowercase word; words of one or two letters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace kpgen
