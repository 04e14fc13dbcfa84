#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "saint/text/labels.hpp"

namespace saint::testing {

// Brute-force term-swap enumeration for ASCII fixtures with single-word
// dictionary terms. Candidate terms are limited to sentences that mention
// "target" when one does; flipped variants rewrite antonym words anywhere.
struct OracleDictionary {
  std::map<std::string, int> scores;
  std::map<std::string, std::string> antonyms;  // both directions
};

inline std::string oracle_lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Splits into alternating word / non-word runs.
inline std::vector<std::string> oracle_runs(const std::string& text) {
  std::vector<std::string> runs;
  for (char c : text) {
    const bool word = std::isalnum(static_cast<unsigned char>(c)) != 0;
    if (runs.empty() ||
        (std::isalnum(static_cast<unsigned char>(runs.back().back())) != 0) != word) {
      runs.emplace_back(1, c);
    } else {
      runs.back() += c;
    }
  }
  return runs;
}

inline std::set<std::pair<std::string, Sentiment>> brute_force_term_variants(
    const std::string& text, Sentiment label, const OracleDictionary& dict) {
  const auto runs = oracle_runs(text);
  // sentence index per run
  std::vector<std::size_t> sentence(runs.size());
  std::size_t s = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    sentence[i] = s;
    if (runs[i].find_first_of(".!?") != std::string::npos) ++s;
  }
  std::set<std::size_t> target_sentences;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (oracle_lower(runs[i]) == "target") target_sentences.insert(sentence[i]);

  std::set<std::pair<std::string, Sentiment>> out;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!target_sentences.empty() && !target_sentences.count(sentence[i])) continue;
    const auto it = dict.scores.find(oracle_lower(runs[i]));
    if (it == dict.scores.end()) continue;
    for (const auto& [term, score] : dict.scores) {
      if (term == it->first) continue;
      const bool same = score == it->second;
      const bool opposite = score == -it->second && score != 0 && is_polar(label);
      if (!same && !opposite) continue;
      auto variant = runs;
      variant[i] = term;
      if (opposite) {
        for (std::size_t j = 0; j < variant.size(); ++j) {
          if (j == i) continue;
          const auto a = dict.antonyms.find(oracle_lower(variant[j]));
          if (a != dict.antonyms.end()) variant[j] = a->second;
        }
      }
      std::string joined;
      for (const auto& r : variant) joined += r;
      if (joined == text) continue;
      out.emplace(joined, same ? label : flip_polarity(label));
    }
  }
  return out;
}

}  // namespace saint::testing
