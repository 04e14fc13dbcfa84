#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace saint::utf8 {

// Decodes UTF-8; malformed bytes decode to U+FFFD one byte at a time.
std::vector<char32_t> decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Simple case folding for Latin scripts (ASCII, Latin-1, Latin Extended-A,
// and the Vietnamese block U+1EA0..U+1EF9). Other code points are unchanged.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);
char32_t to_upper(char32_t cp);

bool is_space(char32_t cp);
// Letters, digits, and every non-ASCII code point count as word characters.
bool is_word_char(char32_t cp);

}  // namespace saint::utf8
