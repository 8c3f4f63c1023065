#pragma once

#include <string_view>

#include "readmet/token.hpp"

namespace readmet {

// Lossless Java-style lexer. Never throws: unterminated literals and block
// comments are closed at end of file and reported as diagnostics. Any byte
// not covered by a longer rule becomes a one-character Punctuation token, so
// reconstruct(tokenize(s)) == s for arbitrary input.
TokenStream tokenize(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace readmet
