#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saint/pipeline/config.hpp"
#include "saint/pipeline/dataset.hpp"
#include "saint/pipeline/train.hpp"

namespace saint {

struct AblationRow {
  int variant = 0;
  std::string name;
  double precision = 0.0;  // test-split scores averaged over seeds
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t seeds = 0;
};

// Trains each variant once per seed on the same dataset and scores the test
// split. Dimensions and schedule come from `base`; the flags from the
// variant id. Throws ConfigError for an unknown id before any training.
std::vector<AblationRow> run_ablation(const Dataset& dataset, std::span<const int> variants,
                                      const TrainConfig& base, const Resources& resources,
                                      std::span<const std::uint64_t> seeds);

std::string format_ablation_table(const std::vector<AblationRow>& rows);
std::string ablation_json(const AblationRow& row);

}  // namespace saint
