#include "saint/augment/augment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "saint/embedding/vocabulary.hpp"
#include "saint/errors.hpp"
#include "saint/text/tokenizer.hpp"
#include "saint/text/utf8.hpp"

namespace saint {

namespace {

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

std::string apply_edits(std::string_view text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin < b.begin; });
  std::string out;
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    out.append(text.substr(cursor, e.begin - cursor));
    out += e.replacement;
    cursor = e.end;
  }
  out.append(text.substr(cursor));
  return out;
}

bool starts_upper(std::string_view text) {
  const auto cps = utf8::decode(text);
  return !cps.empty() && utf8::to_lower(cps[0]) != cps[0];
}

std::string capitalize(std::string_view text) {
  auto cps = utf8::decode(text);
  if (!cps.empty()) cps[0] = utf8::to_upper(cps[0]);
  return utf8::encode(cps);
}

// Replacement text styled after the span it replaces.
std::string styled_like(std::string_view original_span, const std::string& replacement) {
  return starts_upper(original_span) ? capitalize(replacement) : replacement;
}

Edit edit_for(std::string_view text, const std::vector<Token>& tokens, const PhraseMatch& m,
              const std::string& replacement) {
  const std::size_t begin = tokens[m.first_token].begin;
  const std::size_t end = tokens[m.first_token + m.token_count - 1].end;
  return {begin, end, styled_like(text.substr(begin, end - begin), replacement)};
}

bool is_sentence_end(const Token& t) {
  return t.punctuation && t.text.find_first_of(".!?") != std::string::npos;
}

// Per-token flag: inside a sentence that mentions the target (or everywhere
// when the message has no target).
std::vector<bool> target_scope(const std::vector<Token>& tokens) {
  std::vector<std::size_t> sentence(tokens.size());
  std::size_t current = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    sentence[i] = current;
    if (is_sentence_end(tokens[i])) ++current;
  }
  std::set<std::size_t> with_target;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text == Vocabulary::kTargetToken) with_target.insert(sentence[i]);
  }
  std::vector<bool> scope(tokens.size(), with_target.empty());
  if (!with_target.empty()) {
    for (std::size_t i = 0; i < tokens.size(); ++i) scope[i] = with_target.count(sentence[i]) > 0;
  }
  return scope;
}

bool overlaps(const PhraseMatch& a, const PhraseMatch& b) {
  return a.first_token < b.first_token + b.token_count && b.first_token < a.first_token + a.token_count;
}

LabeledMessage derive(const LabeledMessage& source, std::string text, Sentiment label,
                      Provenance provenance) {
  LabeledMessage out;
  out.id = 0;
  out.text = std::move(text);
  out.sentiment = label;
  out.rule = source.rule;
  out.target = source.target;
  out.provenance = provenance;
  out.source_id = source.source_id;
  return out;
}

}  // namespace

MaskResult mask_target(std::string_view message, std::string_view entity) {
  const auto entity_tokens = tokenize(entity);
  if (entity_tokens.empty()) throw InputError("target entity is empty");
  const auto tokens = tokenize_with_spans(message);
  std::vector<Edit> edits;
  std::size_t i = 0;
  while (i + entity_tokens.size() <= tokens.size()) {
    bool hit = true;
    for (std::size_t k = 0; k < entity_tokens.size() && hit; ++k) {
      hit = tokens[i + k].text == entity_tokens[k];
    }
    if (hit) {
      edits.push_back({tokens[i].begin, tokens[i + entity_tokens.size() - 1].end,
                       std::string(kTargetText)});
      i += entity_tokens.size();
    } else {
      ++i;
    }
  }
  MaskResult result;
  result.found = !edits.empty();
  result.text = result.found ? apply_edits(message, std::move(edits)) : std::string(message);
  return result;
}

std::vector<LabeledMessage> term_augment(const LabeledMessage& sample,
                                         const SentimentDictionary& dict,
                                         std::size_t max_variants, std::uint64_t seed) {
  std::vector<LabeledMessage> variants;
  if (dict.empty()) return variants;
  const auto tokens = tokenize_with_spans(sample.text);
  const auto matches = dict.find_terms(tokens);
  const auto scope = target_scope(tokens);
  const auto antonym_keys = dict.find_antonym_keys(tokens);

  std::set<std::string> seen{normalize_phrase(sample.text)};
  for (const auto& m : matches) {
    if (!scope[m.first_token]) continue;
    const int score = dict.entries().at(m.phrase);
    for (const auto& [candidate, candidate_score] : dict.entries()) {
      if (candidate == m.phrase) continue;
      std::vector<Edit> edits{edit_for(sample.text, tokens, m, candidate)};
      Sentiment label = sample.sentiment;
      if (candidate_score == score) {
        // same polarity, label kept
      } else if (score != 0 && candidate_score == -score && is_polar(sample.sentiment)) {
        label = flip_polarity(sample.sentiment);
        for (const auto& key : antonym_keys) {
          if (overlaps(key, m)) continue;
          edits.push_back(edit_for(sample.text, tokens, key, *dict.antonym(key.phrase)));
        }
      } else {
        continue;
      }
      std::string text = apply_edits(sample.text, std::move(edits));
      if (!seen.insert(normalize_phrase(text)).second) continue;
      variants.push_back(derive(sample, std::move(text), label, Provenance::term_swap));
    }
  }

  if (variants.size() > max_variants) {
    std::vector<std::size_t> order(variants.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(max_variants);
    std::sort(order.begin(), order.end());
    std::vector<LabeledMessage> kept;
    kept.reserve(order.size());
    for (auto i : order) kept.push_back(std::move(variants[i]));
    variants = std::move(kept);
  }
  return variants;
}

std::vector<LabeledMessage> negation_augment(const LabeledMessage& sample,
                                             const NegationLexicon& lexicon,
                                             const SentimentDictionary& dict) {
  std::vector<LabeledMessage> variants;
  if (!is_polar(sample.sentiment)) return variants;
  const auto tokens = tokenize_with_spans(sample.text);
  if (tokens.empty()) return variants;

  std::optional<PhraseMatch> first_polar;
  for (const auto& m : dict.find_terms(tokens)) {
    if (dict.entries().at(m.phrase) != 0) {
      first_polar = m;
      break;
    }
  }
  const Sentiment flipped = flip_polarity(sample.sentiment);
  for (const auto& entry : lexicon.entries()) {
    std::size_t insert_at = 0;
    if (entry.placement == NegationPlacement::before_message) {
      insert_at = tokens.front().begin;
    } else {
      if (!first_polar) continue;
      insert_at = tokens[first_polar->first_token].begin;
    }
    const bool leading = insert_at == tokens.front().begin;
    std::string phrase = entry.phrase;
    if (leading && starts_upper(std::string_view(sample.text).substr(insert_at))) {
      phrase = capitalize(phrase);
    }
    std::string text = apply_edits(sample.text, {{insert_at, insert_at, phrase + " "}});
    variants.push_back(derive(sample, std::move(text), flipped, Provenance::negation));
  }
  return variants;
}

AugmentResult augment_dataset(const std::vector<LabeledMessage>& samples,
                              const SentimentDictionary& dict, const NegationLexicon& lexicon,
                              const AugmentConfig& config) {
  AugmentResult result;
  if (!config.term_swap && !config.negation) {
    result.samples = samples;
    return result;
  }
  std::map<std::string, Sentiment> label_of;  // normalized text -> first label
  std::size_t next_id = 0;
  for (const auto& s : samples) {
    next_id = std::max(next_id, s.id + 1);
    const auto key = normalize_phrase(s.text);
    auto [it, inserted] = label_of.emplace(key, s.sentiment);
    if (!inserted) {
      if (it->second != s.sentiment) result.conflicts.push_back({s.text, it->second, s.sentiment});
      if (it->second == s.sentiment) continue;
    }
    result.samples.push_back(s);
  }

  const std::size_t originals = result.samples.size();
  for (std::size_t i = 0; i < originals; ++i) {
    const LabeledMessage source = result.samples[i];
    std::vector<LabeledMessage> variants;
    if (config.term_swap) {
      variants = term_augment(source, dict, config.max_variants,
                              config.seed ^ (0x9E3779B97F4A7C15ULL * (source.id + 1)));
    }
    if (config.negation) {
      auto negated = negation_augment(source, lexicon, dict);
      variants.insert(variants.end(), negated.begin(), negated.end());
    }
    for (auto& v : variants) {
      const auto key = normalize_phrase(v.text);
      auto [it, inserted] = label_of.emplace(key, v.sentiment);
      if (!inserted) {
        if (it->second != v.sentiment) result.conflicts.push_back({v.text, it->second, v.sentiment});
        continue;
      }
      v.id = next_id++;
      result.samples.push_back(std::move(v));
    }
  }
  return result;
}

}  // namespace saint
