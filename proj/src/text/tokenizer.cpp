#include "saint/text/tokenizer.hpp"

#include "saint/text/utf8.hpp"

namespace saint {

namespace {

struct CodePoint {
  char32_t cp;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode_with_offsets(std::string_view text) {
  std::vector<CodePoint> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = 1;
    const auto b0 = static_cast<unsigned char>(text[i]);
    if ((b0 & 0xE0) == 0xC0) len = 2;
    else if ((b0 & 0xF0) == 0xE0) len = 3;
    else if ((b0 & 0xF8) == 0xF0) len = 4;
    if (i + len > text.size()) len = 1;
    auto decoded = utf8::decode(text.substr(i, len));
    if (decoded.size() != 1) {
      // Malformed sequence: consume one byte.
      len = 1;
      decoded = {0xFFFD};
    }
    out.push_back({decoded[0], i, i + len});
    i += len;
  }
  return out;
}

enum class Kind { space, word, punct };

}  // namespace

std::vector<Token> tokenize_with_spans(std::string_view text) {
  const auto cps = decode_with_offsets(text);
  std::vector<Kind> kinds(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i].cp;
    if (utf8::is_space(c)) {
      kinds[i] = Kind::space;
    } else if (utf8::is_word_char(c)) {
      kinds[i] = Kind::word;
    } else {
      kinds[i] = Kind::punct;
    }
  }
  for (std::size_t i = 1; i + 1 < cps.size(); ++i) {
    if (cps[i].cp == U'\'' && kinds[i - 1] == Kind::word && utf8::is_word_char(cps[i + 1].cp)) {
      kinds[i] = Kind::word;
    }
  }

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (kinds[i] == Kind::space) {
      ++i;
      continue;
    }
    const Kind kind = kinds[i];
    std::size_t j = i;
    std::vector<char32_t> folded;
    while (j < cps.size() && kinds[j] == kind) {
      folded.push_back(utf8::to_lower(cps[j].cp));
      ++j;
    }
    tokens.push_back({utf8::encode(folded), cps[i].begin, cps[j - 1].end, kind == Kind::punct});
    i = j;
  }
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_spans(text)) out.push_back(std::move(t.text));
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace saint
