#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "saint/augment/dictionary.hpp"
#include "saint/text/labels.hpp"

namespace saint {

// Spelling of the reserved opinion-target token in masked text.
inline constexpr std::string_view kTargetText = "Target";

struct MaskResult {
  std::string text;
  bool found = false;
};

// Replaces every whole-token, case-insensitive occurrence of `entity` with
// "Target". Throws InputError if the entity has no tokens.
MaskResult mask_target(std::string_view message, std::string_view entity);

/// Term-swap variants of one sample.
///
/// Candidate terms are the dictionary terms inside the sentences that mention
/// Target (the whole message when Target is absent). Each term is replaced by
/// every other dictionary term of the same score (label kept) and, for
/// positive/negative samples, every term of the opposite score (label
/// flipped; context words with a listed antonym are rewritten too). Variants
/// equal to the original or to an earlier variant are dropped. When more than
/// `max_variants` remain, a seeded subset is kept in enumeration order.
std::vector<LabeledMessage> term_augment(const LabeledMessage& sample,
                                         const SentimentDictionary& dict,
                                         std::size_t max_variants, std::uint64_t seed = 0);

// One variant per lexicon entry with the polar label flipped. before_message
// entries prefix the message; before_term entries are inserted in front of
// the first non-neutral dictionary term (skipped when there is none).
// Neutral samples produce nothing.
std::vector<LabeledMessage> negation_augment(const LabeledMessage& sample,
                                             const NegationLexicon& lexicon,
                                             const SentimentDictionary& dict);

struct AugmentConfig {
  bool term_swap = false;
  bool negation = false;
  std::size_t max_variants = std::numeric_limits<std::size_t>::max();
  std::uint64_t seed = 1;
};

struct AugmentConflict {
  std::string text;
  Sentiment kept;
  Sentiment rejected;
};

struct AugmentResult {
  std::vector<LabeledMessage> samples;
  std::vector<AugmentConflict> conflicts;
};

// Originals followed by the enabled variant kinds, deduplicated by
// (normalized text, label). A variant whose text matches an existing sample
// with a different label is reported as a conflict and dropped.
AugmentResult augment_dataset(const std::vector<LabeledMessage>& samples,
                              const SentimentDictionary& dict, const NegationLexicon& lexicon,
                              const AugmentConfig& config);

}  // namespace saint
