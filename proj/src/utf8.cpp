#include "lexgram/utf8.hpp"

#include <vector>

namespace lexgram::utf8 {

std::optional<Decoded> decode(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return std::nullopt;
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return Decoded{b0, 1};

  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return std::nullopt;
  }
  if (pos + len > text.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  return Decoded{cp, len};
}

std::optional<std::size_t> first_invalid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = decode(text, pos);
    if (!d) return pos;
    pos += d->length;
  }
  return std::nullopt;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_letter(char32_t c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c < 0xAA) return false;
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x370 && c <= 0x3FF) return c != 0x375 && c != 0x37E && c != 0x387;
  if (c >= 0x400 && c <= 0x481) return true;
  if (c >= 0x48A && c <= 0x52F) return true;
  if (c >= 0x1E00 && c <= 0x1EFF) return true;
  return false;
}

bool is_upper(char32_t c) {
  if (c >= 'A' && c <= 'Z') return true;
  if (c < 0xC0) return false;
  if (c <= 0xDE) return c != 0xD7;
  if (c >= 0x100 && c <= 0x137) return c % 2 == 0;
  if (c >= 0x139 && c <= 0x148) return c % 2 == 1;
  if (c >= 0x14A && c <= 0x177) return c % 2 == 0;
  if (c == 0x178) return true;
  if (c >= 0x179 && c <= 0x17E) return c % 2 == 1;
  if (c >= 0x391 && c <= 0x3AB) return c != 0x3A2;
  if (c >= 0x400 && c <= 0x42F) return true;
  if (c >= 0x1E00 && c <= 0x1EFF) return c % 2 == 0;
  return false;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0 || c == 0x202F || c == 0x2009;
}

char32_t to_lower(char32_t c) {
  if (!is_upper(c)) return c;
  if (c <= 'Z') return c + 0x20;
  if (c <= 0xDE) return c + 0x20;
  if (c == 0x178) return 0xFF;
  if (c >= 0x391 && c <= 0x3AB) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c + 1;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = decode(text, pos);
    if (!d) {
      out.push_back(text[pos++]);
      continue;
    }
    append(out, to_lower(d->code_point));
    pos += d->length;
  }
  return out;
}

std::string lower_first(std::string_view text) {
  auto d = decode(text, 0);
  if (!d) return std::string(text);
  std::string out;
  append(out, to_lower(d->code_point));
  out.append(text.substr(d->length));
  return out;
}

bool starts_upper(std::string_view text) {
  auto d = decode(text, 0);
  return d && is_upper(d->code_point);
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  for (char ch : text) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t last_scalar_size(std::string_view text) {
  std::size_t len = 0;
  while (len < text.size()) {
    ++len;
    const auto b = static_cast<unsigned char>(text[text.size() - len]);
    if ((b & 0xC0) != 0x80) break;
  }
  return len;
}

std::string_view last_chars(std::string_view text, std::size_t n) {
  std::size_t begin = text.size();
  while (n > 0 && begin > 0) {
    begin -= last_scalar_size(text.substr(0, begin));
    --n;
  }
  return text.substr(begin);
}

std::string_view first_chars(std::string_view text, std::size_t n) {
  std::size_t end = 0;
  while (n > 0 && end < text.size()) {
    auto d = decode(text, end);
    end += d ? d->length : 1;
    --n;
  }
  return text.substr(0, end);
}

std::string reversed(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t end = text.size();
  while (end > 0) {
    const std::size_t len = last_scalar_size(text.substr(0, end));
    out.append(text.substr(end - len, len));
    end -= len;
  }
  return out;
}

}  // namespace lexgram::utf8
