#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace saint {

struct Token {
  std::string text;       // normalized (lowercased) form
  std::size_t begin = 0;  // byte offset into the original text
  std::size_t end = 0;    // one past the last byte
  bool punctuation = false;
};

// Splits on whitespace, lowercases, and detaches punctuation: each maximal run
// of punctuation characters becomes its own token (so ":(" stays whole). An
// apostrophe between two word characters stays inside the word.
std::vector<Token> tokenize_with_spans(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace saint
