#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saint/charenc/char_encoder.hpp"
#include "saint/embedding/vocabulary.hpp"
#include "saint/models/sentiment_net.hpp"

namespace saint {

inline constexpr std::size_t kDefaultSequenceLength = 10;

// First `length` ids, right-padded with PAD.
std::vector<std::size_t> pad_truncate(std::span<const std::string> tokens, const Vocabulary& vocab,
                                      std::size_t length = kDefaultSequenceLength);

// Replaces the target mention (if any) with the reserved token.
std::string prepare_text(std::string_view text, const std::optional<std::string>& target);

EncodedMessage encode_message(std::string_view text, const Vocabulary& words,
                              const CharVocabulary& chars, std::size_t length);

}  // namespace saint
