#include "saint/rules/rules.hpp"

#include <fstream>
#include <map>

#include "saint/embedding/vocabulary.hpp"
#include "saint/errors.hpp"
#include "saint/loss/loss.hpp"
#include "saint/text/tokenizer.hpp"

namespace saint {

namespace {

std::map<std::string, std::size_t> phrase_table(const std::vector<std::string>& phrases) {
  std::map<std::string, std::size_t> table;
  for (const auto& p : phrases) {
    auto key = normalize_phrase(p);
    if (key.empty()) continue;
    const auto len = tokenize(key).size();
    table[std::move(key)] = len;
  }
  return table;
}

std::vector<std::string> normalized(std::vector<std::string> phrases) {
  std::vector<std::string> out;
  for (auto& p : phrases) {
    auto key = normalize_phrase(p);
    if (!key.empty()) out.push_back(std::move(key));
  }
  return out;
}

}  // namespace

Tensor encode_rule(RuleLabel label) { return one_hot_tensor(label); }

RulePatterns RulePatterns::defaults() {
  RulePatterns p;
  p.entities = normalized({"phone", "smartphone", "iphone", "iphone x", "samsung", "samsung s9",
                           "tablet", "ipad", "laptop", "computer", "bphone", "shoes", "car",
                           "cars", "electric cars", "fuel cars", "beer", "food", "foods",
                           "fruit", "fruits", "network", "service", "product", "store", "shop",
                           "camera", "battery", "screen", "price"});
  p.comparative_markers = normalized({"than", "more", "less", "better", "worse", "best", "worst",
                                      "compared to", "prefer"});
  p.question_markers =
      normalized({"how", "what", "when", "where", "which", "who", "whom", "whose", "why", "?"});
  return p;
}

RulePatterns RulePatterns::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read rule patterns " + path.string());
  RulePatterns p;
  std::vector<std::string>* section = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "[entities]") {
      section = &p.entities;
    } else if (line == "[comparative]") {
      section = &p.comparative_markers;
    } else if (line == "[question]") {
      section = &p.question_markers;
    } else if (line.front() == '[') {
      throw FormatError("unknown pattern section " + line + " on line " + std::to_string(line_no));
    } else if (section == nullptr) {
      throw FormatError("pattern line " + std::to_string(line_no) + " precedes any section");
    } else {
      auto key = normalize_phrase(line);
      if (!key.empty()) section->push_back(std::move(key));
    }
  }
  return p;
}

RuleLabel tag_rule(std::string_view message, const RulePatterns& patterns,
                   const SentimentDictionary& dict) {
  const auto tokens = tokenize_with_spans(message);
  auto entity_table = phrase_table(patterns.entities);
  entity_table[std::string(Vocabulary::kTargetToken)] = 1;
  const auto entities = find_phrases(tokens, entity_table);
  if (entities.empty()) return RuleLabel::heuristics;

  if (!find_phrases(tokens, phrase_table(patterns.comparative_markers)).empty()) {
    return RuleLabel::directly_comparable;
  }
  const bool trailing_question = !tokens.empty() && tokens.back().punctuation &&
                                 tokens.back().text.find('?') != std::string::npos;
  if (trailing_question || !find_phrases(tokens, phrase_table(patterns.question_markers)).empty()) {
    return RuleLabel::question;
  }
  for (const auto& term : dict.find_terms(tokens)) {
    if (dict.entries().at(term.phrase) == 0) continue;
    const std::size_t t_begin = term.first_token;
    const std::size_t t_end = term.first_token + term.token_count;  // exclusive
    for (const auto& e : entities) {
      const std::size_t e_begin = e.first_token;
      const std::size_t e_end = e.first_token + e.token_count;
      const std::size_t gap = e_end <= t_begin ? t_begin - e_end + 1
                              : t_end <= e_begin ? e_begin - t_end + 1
                                                 : 0;
      if (gap <= patterns.adjacency_window) return RuleLabel::directly_simple;
    }
  }
  return RuleLabel::heuristics;
}

}  // namespace saint
