#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "saint/text/labels.hpp"

namespace saint {

enum class Averaging { macro, micro };

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

/// Summary precision/recall/F over the three sentiment classes. A class that
/// is never predicted (or never present) scores 0 for the undefined ratio.
struct MetricsReport {
  Averaging averaging = Averaging::macro;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t total = 0;
  std::array<ClassMetrics, kSentimentClasses> per_class{};
  // confusion[true][predicted]
  std::array<std::array<std::size_t, kSentimentClasses>, kSentimentClasses> confusion{};
};

// Throws InputError when the inputs are empty or of unequal length.
MetricsReport compute_metrics(std::span<const Sentiment> truth, std::span<const Sentiment> predicted,
                              Averaging averaging = Averaging::macro);

std::string format_report(const MetricsReport& report);
// Single-line JSON object.
std::string report_json(const MetricsReport& report);

}  // namespace saint
