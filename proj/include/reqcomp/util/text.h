#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reqcomp {

// Decodes the UTF-8 code point starting at text[pos]; advances pos past it.
// Invalid bytes decode as U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view text, std::size_t& pos);

// ASCII lowercasing; non-ASCII bytes pass through unchanged.
std::string to_lower(std::string_view s);

// True when every code point is a letter (ASCII letters, or any non-ASCII
// code point that is not general punctuation). Empty strings are not words.
bool is_alphabetic(std::string_view s);

bool is_ascii_space(char c);
std::string_view trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

// Shortest decimal text that round-trips a double.
std::string format_double(double v);

}  // namespace reqcomp
