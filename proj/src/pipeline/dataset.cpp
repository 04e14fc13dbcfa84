#include "saint/pipeline/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "saint/errors.hpp"

namespace saint {

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "?";
}

std::vector<LabeledMessage> Dataset::subset(Split split) const {
  std::vector<LabeledMessage> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (splits[i] == split) out.push_back(samples[i]);
  }
  return out;
}

std::size_t Dataset::count(Split split) const {
  return static_cast<std::size_t>(std::count(splits.begin(), splits.end(), split));
}

namespace {

bool is_original(const LabeledMessage& m) { return m.provenance == Provenance::original; }

std::unordered_map<std::size_t, Split> source_splits(const Dataset& d) {
  std::unordered_map<std::size_t, Split> out;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (is_original(d.samples[i])) out.emplace(d.samples[i].source_id, d.splits[i]);
  }
  return out;
}

Split split_of_source(const std::unordered_map<std::size_t, Split>& table,
                      const LabeledMessage& variant) {
  auto it = table.find(variant.source_id);
  if (it == table.end()) {
    throw InputError("variant " + std::to_string(variant.id) + " refers to missing source " +
                     std::to_string(variant.source_id));
  }
  return it->second;
}

}  // namespace

Dataset split_dataset(std::vector<LabeledMessage> samples, const SplitRatios& ratios,
                      std::uint64_t seed) {
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0) {
    throw ConfigError("split ratios must be non-negative");
  }
  if (std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
  std::vector<std::size_t> originals;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (is_original(samples[i])) originals.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(originals.begin(), originals.end(), rng);

  const std::size_t n = originals.size();
  const auto n_train = std::min<std::size_t>(n, std::llround(ratios.train * static_cast<double>(n)));
  const auto n_val = std::min<std::size_t>(
      n - n_train, std::llround(ratios.validation * static_cast<double>(n)));

  Dataset d;
  d.samples = std::move(samples);
  d.splits.assign(d.samples.size(), Split::train);
  for (std::size_t k = 0; k < n; ++k) {
    d.splits[originals[k]] = k < n_train ? Split::train
                             : k < n_train + n_val ? Split::validation
                                                   : Split::test;
  }
  const auto table = source_splits(d);
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (!is_original(d.samples[i])) d.splits[i] = split_of_source(table, d.samples[i]);
  }
  return d;
}

void add_variants(Dataset& dataset, std::vector<LabeledMessage> variants) {
  const auto table = source_splits(dataset);
  for (auto& v : variants) {
    const Split s = split_of_source(table, v);
    dataset.samples.push_back(std::move(v));
    dataset.splits.push_back(s);
  }
}

}  // namespace saint
