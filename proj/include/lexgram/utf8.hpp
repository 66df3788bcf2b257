#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers. Character classes cover Latin (Basic, Latin-1,
// Extended-A/B, Extended Additional), Greek and Cyrillic, which is what the
// lexicons handled here use.
namespace lexgram::utf8 {

struct Decoded {
  char32_t code_point;
  std::size_t length;
};

// Decodes the scalar starting at pos. Returns nullopt on malformed input
// (bad lead byte, truncated sequence, overlong form, surrogate, > U+10FFFF).
std::optional<Decoded> decode(std::string_view text, std::size_t pos);

// Byte offset of the first malformed sequence, or nullopt if text is valid.
std::optional<std::size_t> first_invalid(std::string_view text);

void append(std::string& out, char32_t code_point);

bool is_letter(char32_t c);
bool is_upper(char32_t c);
bool is_digit(char32_t c);
bool is_space(char32_t c);
char32_t to_lower(char32_t c);

std::string to_lower(std::string_view text);
std::string lower_first(std::string_view text);
bool starts_upper(std::string_view text);

std::size_t length(std::string_view text);

// Byte length of the last scalar of a valid non-empty string.
std::size_t last_scalar_size(std::string_view text);

// The last n scalars (or fewer) of text; never splits a scalar.
std::string_view last_chars(std::string_view text, std::size_t n);
// The first n scalars (or fewer) of text.
std::string_view first_chars(std::string_view text, std::size_t n);

// Scalars in reverse order, re-encoded.
std::string reversed(std::string_view text);

}  // namespace lexgram::utf8
