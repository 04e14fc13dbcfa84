#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace saint {

/// Token <-> index map with three reserved slots at the front.
///
/// Index 0 is PAD, 1 is UNK, 2 is TARGET (the masked opinion target). The
/// TARGET slot is spelled "target" so that masked text ("Target is bad")
/// tokenizes straight onto it.
class Vocabulary {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;
  static constexpr std::size_t kTarget = 2;
  static constexpr std::size_t kReserved = 3;
  static constexpr std::size_t kDefaultMaxSize = 65000;
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";
  static constexpr std::string_view kTargetToken = "target";

  // Reserved slots only.
  Vocabulary();

  // Ranks tokens by descending frequency (ties lexicographic) and keeps the
  // top max_size - 3. Throws InputError on an empty corpus.
  static Vocabulary build(const std::vector<std::vector<std::string>>& corpus,
                          std::size_t max_size = kDefaultMaxSize);
  // Rebuilds from an ordered token list that starts with the reserved tokens.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  // True once at least one non-reserved token is present.
  bool built() const { return tokens_.size() > kReserved; }

  // Unknown tokens map to kUnk.
  std::size_t index_of(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(std::size_t index) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace saint
