#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "saint/models/gru.hpp"
#include "saint/tensor/tensor.hpp"

namespace saint {

// Character sequence of a message plus the index of each word's last
// character. Words are the tokenizer's tokens joined by single spaces, so
// whitespace stays in the sequence.
struct CharSequence {
  std::vector<char32_t> chars;
  std::vector<std::size_t> end_positions;
};

CharSequence char_tokenize(std::string_view message);

class CharVocabulary {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;

  CharVocabulary();
  // Every character seen in the tokenized messages, in code point order.
  static CharVocabulary build(std::span<const std::string> messages);
  // Code points for indices 2.. in order.
  static CharVocabulary from_code_points(std::span<const char32_t> chars);

  std::size_t size() const { return chars_.size() + 2; }
  std::size_t index_of(char32_t c) const;
  // Code points of the non-reserved entries, in index order.
  const std::vector<char32_t>& code_points() const { return chars_; }
  std::vector<std::size_t> encode(std::span<const char32_t> chars) const;

  bool operator==(const CharVocabulary& other) const { return chars_ == other.chars_; }

 private:
  std::vector<char32_t> chars_;
  std::unordered_map<char32_t, std::size_t> index_;
};

struct CharBiGruParams {
  Tensor table;  // [C x d_c]; row kPad is pinned to zero
  GruCellParams forward;
  GruCellParams backward;

  static CharBiGruParams init(std::size_t vocab_size, std::size_t char_dim, std::size_t hidden,
                              std::mt19937_64& rng);

  std::size_t char_dim() const { return table.dim(1); }
  std::size_t hidden_size() const { return forward.hidden_size(); }
  std::size_t output_size() const { return 2 * hidden_size(); }
  std::vector<Tensor> parameters() const;
};

// Runs the Bi-GRU over the whole character sequence and reads, for each word,
// concat(forward state, backward state) at the word's last character.
// Result is [words x 2H]. Throws InputError on an empty sequence.
Tensor encode_char_words(std::span<const std::size_t> char_ids,
                         std::span<const std::size_t> end_positions,
                         const CharBiGruParams& params,
                         const std::function<Tensor(const Tensor&)>& input_dropout = {});
Tensor encode_char_words(std::string_view message, const CharVocabulary& vocab,
                         const CharBiGruParams& params);

// Rowwise [word | char] concatenation.
Tensor combine_word_char(const Tensor& word_vecs, const Tensor& char_vecs);

}  // namespace saint
