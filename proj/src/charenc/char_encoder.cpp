#include "saint/charenc/char_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"
#include "saint/text/tokenizer.hpp"
#include "saint/text/utf8.hpp"

namespace saint {

CharSequence char_tokenize(std::string_view message) {
  CharSequence seq;
  for (const auto& token : tokenize(message)) {
    if (!seq.chars.empty()) seq.chars.push_back(U' ');
    const auto cps = utf8::decode(token);
    seq.chars.insert(seq.chars.end(), cps.begin(), cps.end());
    seq.end_positions.push_back(seq.chars.size() - 1);
  }
  return seq;
}

CharVocabulary::CharVocabulary() = default;

CharVocabulary CharVocabulary::build(std::span<const std::string> messages) {
  std::set<char32_t> seen;
  for (const auto& m : messages) {
    for (auto c : char_tokenize(m).chars) seen.insert(c);
  }
  std::vector<char32_t> ordered(seen.begin(), seen.end());
  return from_code_points(ordered);
}

CharVocabulary CharVocabulary::from_code_points(std::span<const char32_t> chars) {
  CharVocabulary vocab;
  for (auto c : chars) {
    if (!vocab.index_.emplace(c, vocab.chars_.size() + 2).second) {
      throw FormatError("duplicate character U+" + std::to_string(static_cast<unsigned>(c)) +
                        " in character vocabulary");
    }
    vocab.chars_.push_back(c);
  }
  return vocab;
}

std::size_t CharVocabulary::index_of(char32_t c) const {
  auto it = index_.find(c);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<std::size_t> CharVocabulary::encode(std::span<const char32_t> chars) const {
  std::vector<std::size_t> ids;
  ids.reserve(chars.size());
  for (auto c : chars) ids.push_back(index_of(c));
  return ids;
}

CharBiGruParams CharBiGruParams::init(std::size_t vocab_size, std::size_t char_dim,
                                      std::size_t hidden, std::mt19937_64& rng) {
  if (vocab_size < 2 || char_dim == 0 || hidden == 0) {
    throw ConfigError("character encoder dimensions must be positive");
  }
  CharBiGruParams p;
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<double> table(vocab_size * char_dim);
  for (auto& v : table) v = dist(rng);
  std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(char_dim), 0.0);
  p.table = Tensor::from_values({vocab_size, char_dim}, std::move(table), true);
  p.forward = GruCellParams::init(char_dim, hidden, rng);
  p.backward = GruCellParams::init(char_dim, hidden, rng);
  return p;
}

std::vector<Tensor> CharBiGruParams::parameters() const {
  std::vector<Tensor> out{table};
  for (auto& t : forward.parameters()) out.push_back(t);
  for (auto& t : backward.parameters()) out.push_back(t);
  return out;
}

Tensor encode_char_words(std::span<const std::size_t> char_ids,
                         std::span<const std::size_t> end_positions,
                         const CharBiGruParams& params,
                         const std::function<Tensor(const Tensor&)>& input_dropout) {
  if (char_ids.empty() || end_positions.empty()) {
    throw InputError("cannot encode an empty character sequence");
  }
  for (auto pos : end_positions) {
    if (pos >= char_ids.size()) {
      throw InputError("word end position " + std::to_string(pos) + " beyond sequence of " +
                       std::to_string(char_ids.size()) + " characters");
    }
  }
  Tensor embedded = gather_rows(params.table, char_ids, CharVocabulary::kPad);
  if (input_dropout) embedded = input_dropout(embedded);
  std::vector<Tensor> rows;
  rows.reserve(char_ids.size());
  for (std::size_t t = 0; t < char_ids.size(); ++t) rows.push_back(row(embedded, t));

  auto fwd = gru_states(rows, params.forward);
  std::reverse(rows.begin(), rows.end());
  auto bwd = gru_states(rows, params.backward);
  std::reverse(bwd.begin(), bwd.end());

  std::vector<Tensor> words;
  words.reserve(end_positions.size());
  for (auto pos : end_positions) words.push_back(concat({fwd[pos], bwd[pos]}, 0));
  return stack_rows(words);
}

Tensor encode_char_words(std::string_view message, const CharVocabulary& vocab,
                         const CharBiGruParams& params) {
  const auto seq = char_tokenize(message);
  if (seq.chars.empty()) throw InputError("cannot encode an empty message");
  const auto ids = vocab.encode(seq.chars);
  return encode_char_words(ids, seq.end_positions, params);
}

Tensor combine_word_char(const Tensor& word_vecs, const Tensor& char_vecs) {
  if (word_vecs.rank() != 2 || char_vecs.rank() != 2 || word_vecs.dim(0) != char_vecs.dim(0)) {
    throw DimensionError("cannot combine word vectors " + shape_to_string(word_vecs.shape()) +
                         " with character vectors " + shape_to_string(char_vecs.shape()));
  }
  return concat({word_vecs, char_vecs}, 1);
}

}  // namespace saint
