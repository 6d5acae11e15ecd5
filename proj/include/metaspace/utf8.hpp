#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace metaspace::utf8 {

/// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

/// Number of code points.
std::size_t length(std::string_view text);

/// Simple (one-to-one) lowercase mapping for Latin, Greek and Cyrillic.
char32_t fold_case(char32_t c);

/// Letters and digits of the scripts fold_case knows about, plus any other
/// code point outside the punctuation, symbol and emoji blocks.
bool is_word_char(char32_t c);

std::string trim(std::string_view text);

std::string to_lower_ascii(std::string_view text);

} // namespace metaspace::utf8
