#include "saint/augment/dictionary.hpp"

#include <algorithm>
#include <fstream>

#include "saint/errors.hpp"

namespace saint {

namespace {

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::size_t token_count(const std::string& normalized) {
  return static_cast<std::size_t>(std::count(normalized.begin(), normalized.end(), ' ')) + 1;
}

}  // namespace

std::string normalize_phrase(std::string_view text) { return join_tokens(tokenize(text)); }

std::vector<PhraseMatch> find_phrases(const std::vector<Token>& tokens,
                                      const std::map<std::string, std::size_t>& phrase_lengths) {
  std::size_t longest = 0;
  for (const auto& [phrase, len] : phrase_lengths) longest = std::max(longest, len);
  std::vector<PhraseMatch> matches;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest, tokens.size() - i); len >= 1; --len) {
      std::string candidate = tokens[i].text;
      for (std::size_t k = 1; k < len; ++k) candidate += ' ' + tokens[i + k].text;
      if (phrase_lengths.count(candidate)) {
        matches.push_back({i, len, std::move(candidate)});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return matches;
}

void SentimentDictionary::add(std::string_view term, int score) {
  if (score < -1 || score > 1) {
    throw InputError("sentiment score must be -1, 0 or 1, got " + std::to_string(score));
  }
  auto key = normalize_phrase(term);
  if (key.empty()) throw InputError("empty dictionary term");
  term_lengths_[key] = token_count(key);
  scores_[std::move(key)] = score;
}

void SentimentDictionary::add_antonym_pair(std::string_view a, std::string_view b) {
  auto ka = normalize_phrase(a);
  auto kb = normalize_phrase(b);
  if (ka.empty() || kb.empty() || ka == kb) throw InputError("invalid antonym pair");
  antonym_lengths_[ka] = token_count(ka);
  antonym_lengths_[kb] = token_count(kb);
  antonyms_[ka] = kb;
  antonyms_[kb] = ka;
}

std::optional<int> SentimentDictionary::score(std::string_view term) const {
  auto it = scores_.find(normalize_phrase(term));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> SentimentDictionary::antonym(std::string_view term) const {
  auto it = antonyms_.find(normalize_phrase(term));
  if (it == antonyms_.end()) return std::nullopt;
  return it->second;
}

std::vector<PhraseMatch> SentimentDictionary::find_terms(const std::vector<Token>& tokens) const {
  return find_phrases(tokens, term_lengths_);
}

std::vector<PhraseMatch> SentimentDictionary::find_antonym_keys(
    const std::vector<Token>& tokens) const {
  return find_phrases(tokens, antonym_lengths_);
}

SentimentDictionary SentimentDictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read sentiment dictionary " + path.string());
  SentimentDictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tab(line);
    if (fields.size() != 2) {
      throw FormatError("dictionary line " + std::to_string(line_no) + ": expected term<TAB>score");
    }
    int score = 0;
    if (fields[1] == "1" || fields[1] == "+1") {
      score = 1;
    } else if (fields[1] == "-1") {
      score = -1;
    } else if (fields[1] == "0") {
      score = 0;
    } else {
      throw FormatError("dictionary line " + std::to_string(line_no) + ": score must be -1, 0 or 1");
    }
    dict.add(fields[0], score);
  }
  return dict;
}

void SentimentDictionary::load_antonyms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read antonym list " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tab(line);
    if (fields.size() != 2) {
      throw FormatError("antonym line " + std::to_string(line_no) + ": expected word<TAB>antonym");
    }
    add_antonym_pair(fields[0], fields[1]);
  }
}

NegationLexicon::NegationLexicon(std::vector<NegationEntry> entries) {
  for (auto& e : entries) add(std::move(e.phrase), e.placement);
}

void NegationLexicon::add(std::string phrase, NegationPlacement placement) {
  if (normalize_phrase(phrase).empty()) throw InputError("empty negation phrase");
  for (const auto& e : entries_) {
    if (normalize_phrase(e.phrase) == normalize_phrase(phrase) && e.placement == placement) {
      throw InputError("duplicate negation entry '" + phrase + "'");
    }
  }
  entries_.push_back({std::move(phrase), placement});
}

NegationLexicon NegationLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read negation lexicon " + path.string());
  NegationLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tab(line);
    if (fields.size() != 2 || (fields[1] != "message" && fields[1] != "term")) {
      throw FormatError("negation line " + std::to_string(line_no) +
                        ": expected phrase<TAB>message|term");
    }
    lexicon.add(fields[0], fields[1] == "message" ? NegationPlacement::before_message
                                                  : NegationPlacement::before_term);
  }
  if (lexicon.empty()) throw FormatError("negation lexicon " + path.string() + " is empty");
  return lexicon;
}

}  // namespace saint
