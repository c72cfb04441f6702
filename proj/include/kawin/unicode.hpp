#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "kawin/error.hpp"

namespace kawin::unicode {

/// Separator emitted between two graphemes whose concatenation would
/// otherwise be read back as a different grapheme ("n" + "g" vs "ng").
inline constexpr char32_t kBoundaryMark = U'·';

/// Decodes UTF-8 into code points. Throws EncodingError on malformed input.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view text);
std::string encode(char32_t c);

/// Canonical composition (NFC). Throws EncodingError on invalid UTF-8.
std::string nfc(std::string_view utf8);

char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);
bool is_upper(char32_t c);
bool is_combining_mark(char32_t c);

/// Letters and combining marks: characters that must belong to a grapheme.
bool is_letter_like(char32_t c);
bool is_space(char32_t c);
bool is_punctuation(char32_t c);

/// Simple per-code-point lowercase mapping.
std::u32string fold(std::u32string_view text);

/// Length in code points of a valid UTF-8 string.
std::size_t length(std::string_view utf8);

/// Trims Unicode whitespace at both ends.
std::string trim(std::string_view utf8);

}  // namespace kawin::unicode
