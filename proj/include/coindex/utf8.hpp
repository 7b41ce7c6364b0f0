#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coindex::utf8 {

// Lowercases ASCII and the Latin-1 supplement (U+00C0..U+00DE); other bytes
// are copied through.
std::string to_lower(std::string_view s);

// Splits into code points. Invalid sequences yield one byte per element.
std::vector<std::string_view> code_points(std::string_view s);

std::size_t length(std::string_view s);

bool is_ascii_punct(char c);
bool is_ascii_digit(char c);
bool is_ascii_upper(char c);
bool is_space(char c);

// True for ASCII letters and any non-ASCII byte (treated as part of a letter).
bool is_letter_byte(char c);

}  // namespace coindex::utf8
