#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saint/text/tokenizer.hpp"

namespace saint {

// A phrase occurrence inside a token list.
struct PhraseMatch {
  std::size_t first_token = 0;
  std::size_t token_count = 0;
  std::string phrase;  // normalized form
};

// Lowercased tokens joined by single spaces.
std::string normalize_phrase(std::string_view text);

// Longest-match-first, left-to-right, whole-token search. `phrases` holds
// normalized phrases.
std::vector<PhraseMatch> find_phrases(const std::vector<Token>& tokens,
                                      const std::map<std::string, std::size_t>& phrase_lengths);

/// Term -> score with scores in {-1, 0, 1}. Terms may span several tokens and
/// are matched case-insensitively.
///
/// Optional antonym pairs (e.g. better/worse) are used when a variant flips
/// polarity: context words with a listed antonym are rewritten to it.
class SentimentDictionary {
 public:
  void add(std::string_view term, int score);
  void add_antonym_pair(std::string_view a, std::string_view b);

  std::optional<int> score(std::string_view term) const;
  std::optional<std::string> antonym(std::string_view term) const;

  // Normalized term -> score, in lexicographic term order.
  const std::map<std::string, int>& entries() const { return scores_; }
  std::size_t size() const { return scores_.size(); }
  bool empty() const { return scores_.empty(); }

  std::vector<PhraseMatch> find_terms(const std::vector<Token>& tokens) const;
  std::vector<PhraseMatch> find_antonym_keys(const std::vector<Token>& tokens) const;

  // "term<TAB>score" per line; blank lines and '#' comments ignored.
  static SentimentDictionary load(const std::filesystem::path& path);
  // "word<TAB>antonym" per line, added in both directions.
  void load_antonyms(const std::filesystem::path& path);

 private:
  std::map<std::string, int> scores_;
  std::map<std::string, std::size_t> term_lengths_;
  std::map<std::string, std::string> antonyms_;
  std::map<std::string, std::size_t> antonym_lengths_;
};

enum class NegationPlacement { before_message, before_term };

struct NegationEntry {
  std::string phrase;
  NegationPlacement placement = NegationPlacement::before_message;
};

class NegationLexicon {
 public:
  NegationLexicon() = default;
  explicit NegationLexicon(std::vector<NegationEntry> entries);

  void add(std::string phrase, NegationPlacement placement);
  const std::vector<NegationEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // "phrase<TAB>placement" per line, placement in {message, term}.
  static NegationLexicon load(const std::filesystem::path& path);

 private:
  std::vector<NegationEntry> entries_;
};

}  // namespace saint
