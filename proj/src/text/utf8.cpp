#include "saint/text/utf8.hpp"

namespace saint::utf8 {

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  for (auto cp : cps) out += encode(cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if ((cp >= 0xC0 && cp <= 0xDE) && cp != 0xD7) return cp + 32;
  // Latin Extended-A pairs: even = upper, odd = lower (except the I/J/L/N
  // irregular stretch 0x130-0x149 and 0x178-0x17E, handled separately).
  if (cp >= 0x100 && cp <= 0x12F && cp % 2 == 0) return cp + 1;
  if (cp >= 0x132 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E && cp % 2 == 1) return cp + 1;
  if (cp == 0x1A0 || cp == 0x1AF) return cp + 1;  // Ơ, Ư
  if (cp >= 0x1EA0 && cp <= 0x1EF9 && cp % 2 == 0) return cp + 1;
  return cp;
}

char32_t to_upper(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 32;
  if ((cp >= 0xE0 && cp <= 0xFE) && cp != 0xF7) return cp - 32;
  if (cp >= 0x101 && cp <= 0x12F && cp % 2 == 1) return cp - 1;
  if (cp >= 0x133 && cp <= 0x137 && cp % 2 == 1) return cp - 1;
  if (cp >= 0x13A && cp <= 0x148 && cp % 2 == 0) return cp - 1;
  if (cp >= 0x14B && cp <= 0x177 && cp % 2 == 1) return cp - 1;
  if (cp >= 0x17A && cp <= 0x17E && cp % 2 == 0) return cp - 1;
  if (cp == 0x1A1 || cp == 0x1B0) return cp - 1;
  if (cp >= 0x1EA1 && cp <= 0x1EF9 && cp % 2 == 1) return cp - 1;
  return cp;
}

std::string to_lower(std::string_view text) {
  auto cps = decode(text);
  for (auto& cp : cps) cp = to_lower(cp);
  return encode(cps);
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0xA0 || cp == 0x3000;
}

bool is_word_char(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return true;
  if (cp >= U'A' && cp <= U'Z') return true;
  if (cp >= U'0' && cp <= U'9') return true;
  if (cp == U'_') return true;
  return cp >= 0x80 && !is_space(cp);
}

}  // namespace saint::utf8
