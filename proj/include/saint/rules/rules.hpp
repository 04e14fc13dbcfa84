#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "saint/augment/dictionary.hpp"
#include "saint/tensor/tensor.hpp"
#include "saint/text/labels.hpp"

namespace saint {

// One-hot [4] in the order simple, comparable, question, heuristics.
Tensor encode_rule(RuleLabel label);

/// Word lists driving the rule tagger. Phrases are stored normalized.
struct RulePatterns {
  std::vector<std::string> entities;
  std::vector<std::string> comparative_markers;
  std::vector<std::string> question_markers;
  // Max token distance between an entity and a sentiment term for the
  // directly-simple rule.
  std::size_t adjacency_window = 3;

  // Small built-in lists covering common product nouns, comparatives and
  // interrogatives. The masked-target token is always treated as an entity.
  static RulePatterns defaults();

  // Sections "[entities]", "[comparative]", "[question]" with one phrase per
  // line. Blank lines and '#' comments are ignored.
  static RulePatterns load(const std::filesystem::path& path);
};

// Evaluated in order: comparable (comparative marker + entity), question
// (interrogative or trailing "?" + entity), simple (entity within the
// adjacency window of a sentiment term), otherwise heuristics.
RuleLabel tag_rule(std::string_view message, const RulePatterns& patterns,
                   const SentimentDictionary& dict);

}  // namespace saint
