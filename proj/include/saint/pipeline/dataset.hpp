#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "saint/text/labels.hpp"

namespace saint {

enum class Split { train, validation, test };
std::string_view to_string(Split s);

struct SplitRatios {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

/// Samples with one split assignment each (parallel vectors).
struct Dataset {
  std::vector<LabeledMessage> samples;
  std::vector<Split> splits;

  std::vector<LabeledMessage> subset(Split split) const;
  std::size_t count(Split split) const;
};

// Originals are shuffled with the seed and cut contiguously; every variant
// goes wherever its source (matched by source_id) went. Throws ConfigError on
// bad ratios, InputError for a variant whose source is absent.
Dataset split_dataset(std::vector<LabeledMessage> samples, const SplitRatios& ratios = {},
                      std::uint64_t seed = 1);

// Appends variants, each placed in its source's split.
void add_variants(Dataset& dataset, std::vector<LabeledMessage> variants);

}  // namespace saint
