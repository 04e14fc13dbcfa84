#include "saint/pipeline/preprocess.hpp"

#include <algorithm>

#include "saint/augment/augment.hpp"
#include "saint/text/tokenizer.hpp"

namespace saint {

std::vector<std::size_t> pad_truncate(std::span<const std::string> tokens, const Vocabulary& vocab,
                                      std::size_t length) {
  std::vector<std::size_t> ids(length, Vocabulary::kPad);
  const std::size_t kept = std::min(length, tokens.size());
  for (std::size_t i = 0; i < kept; ++i) ids[i] = vocab.index_of(tokens[i]);
  return ids;
}

std::string prepare_text(std::string_view text, const std::optional<std::string>& target) {
  if (!target || target->empty()) return std::string(text);
  return mask_target(text, *target).text;
}

EncodedMessage encode_message(std::string_view text, const Vocabulary& words,
                              const CharVocabulary& chars, std::size_t length) {
  EncodedMessage m;
  const auto tokens = tokenize(text);
  m.word_ids = pad_truncate(tokens, words, length);
  auto seq = char_tokenize(text);
  m.char_ids = chars.encode(seq.chars);
  m.word_ends = std::move(seq.end_positions);
  return m;
}

}  // namespace saint
