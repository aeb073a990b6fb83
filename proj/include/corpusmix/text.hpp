#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace corpusmix {

// UTF-8 code point helpers. Malformed byte sequences decode as U+FFFD one
// byte at a time, so processing always terminates and never throws.

// Decodes the code point starting at s[i] and advances i past it.
char32_t decode_utf8(std::string_view s, std::size_t& i);

void append_utf8(std::string& out, char32_t cp);

std::size_t count_codepoints(std::string_view s);

// Unicode general category P*.
bool is_punctuation(char32_t cp);

bool is_whitespace(char32_t cp);

// Simple (single code point) lowercase mapping; identity when none exists.
char32_t to_lower(char32_t cp);

// View without leading and trailing whitespace code points.
std::string_view trim_whitespace(std::string_view s);

}  // namespace corpusmix
