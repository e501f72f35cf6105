#pragma once

// UTF-8 helpers backed by ICU. Internal header.

#include <string>
#include <string_view>
#include <vector>

namespace slrkit::detail {

std::u32string decode_utf8(std::string_view s);  // invalid bytes become U+FFFD
/// Also records the byte offset of every code point, plus s.size() at the end.
std::u32string decode_utf8(std::string_view s, std::vector<std::size_t>& offsets);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t c);

std::string lowercase(std::string_view s);
std::string fold_case(std::string_view s);
std::string nfkc(std::string_view s);

bool is_word_char(char32_t c);  // letter, digit or combining mark
bool is_space_char(char32_t c);
bool is_upper_char(char32_t c);
bool is_lower_char(char32_t c);
char32_t fold_char(char32_t c);  // simple case folding, one code point to one

}  // namespace slrkit::detail
