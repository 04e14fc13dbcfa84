#include "saint/embedding/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "saint/errors.hpp"

namespace saint {

Vocabulary::Vocabulary() {
  for (auto t : {kPadToken, kUnkToken, kTargetToken}) {
    index_.emplace(std::string(t), tokens_.size());
    tokens_.emplace_back(t);
  }
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& corpus,
                             std::size_t max_size) {
  if (max_size < kReserved) {
    throw ConfigError("vocabulary max_size must be at least " + std::to_string(kReserved));
  }
  bool any = false;
  std::map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& tok : sentence) {
      any = true;
      if (tok == kPadToken || tok == kUnkToken || tok == kTargetToken) continue;
      ++counts[tok];
    }
  }
  if (!any) throw InputError("cannot build a vocabulary from an empty corpus");

  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  const std::size_t room = max_size - kReserved;
  for (std::size_t i = 0; i < ranked.size() && i < room; ++i) {
    vocab.index_.emplace(ranked[i].first, vocab.tokens_.size());
    vocab.tokens_.push_back(ranked[i].first);
  }
  return vocab;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < kReserved || tokens[kPad] != kPadToken || tokens[kUnk] != kUnkToken ||
      tokens[kTarget] != kTargetToken) {
    throw FormatError("vocabulary must start with the reserved tokens <pad>, <unk>, target");
  }
  Vocabulary vocab;
  for (std::size_t i = kReserved; i < tokens.size(); ++i) {
    if (tokens[i].empty()) throw FormatError("empty token at index " + std::to_string(i));
    if (!vocab.index_.emplace(tokens[i], i).second) {
      throw FormatError("duplicate token '" + tokens[i] + "' at index " + std::to_string(i));
    }
    vocab.tokens_.push_back(std::move(tokens[i]));
  }
  return vocab;
}

std::size_t Vocabulary::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

const std::string& Vocabulary::token(std::size_t index) const {
  if (index >= tokens_.size()) {
    throw InputError("vocabulary index " + std::to_string(index) + " out of range");
  }
  return tokens_[index];
}

std::vector<std::size_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(index_of(t));
  return ids;
}

}  // namespace saint
