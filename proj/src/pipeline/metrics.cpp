#include "saint/pipeline/metrics.hpp"

#include <cstdio>
#include <json.hpp>

#include "saint/errors.hpp"

namespace saint {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

MetricsReport compute_metrics(std::span<const Sentiment> truth, std::span<const Sentiment> predicted,
                              Averaging averaging) {
  if (truth.empty()) throw InputError("cannot compute metrics on an empty split");
  if (truth.size() != predicted.size()) {
    throw InputError("truth and prediction counts differ: " + std::to_string(truth.size()) +
                     " vs " + std::to_string(predicted.size()));
  }
  MetricsReport r;
  r.averaging = averaging;
  r.total = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++r.confusion[index_of(truth[i])][index_of(predicted[i])];
  }
  std::size_t correct = 0;
  for (std::size_t c = 0; c < kSentimentClasses; ++c) {
    std::size_t predicted_c = 0, support = 0;
    for (std::size_t k = 0; k < kSentimentClasses; ++k) {
      predicted_c += r.confusion[k][c];
      support += r.confusion[c][k];
    }
    const std::size_t tp = r.confusion[c][c];
    correct += tp;
    auto& m = r.per_class[c];
    m.support = support;
    m.precision = ratio(tp, predicted_c);
    m.recall = ratio(tp, support);
    m.f1 = harmonic(m.precision, m.recall);
  }
  r.accuracy = ratio(correct, r.total);
  if (averaging == Averaging::micro) {
    // single-label: micro P = micro R = accuracy
    r.precision = r.recall = r.f1 = r.accuracy;
  } else {
    for (const auto& m : r.per_class) {
      r.precision += m.precision;
      r.recall += m.recall;
      r.f1 += m.f1;
    }
    r.precision /= kSentimentClasses;
    r.recall /= kSentimentClasses;
    r.f1 /= kSentimentClasses;
  }
  return r;
}

std::string format_report(const MetricsReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %9s %9s %9s %8s\n", "class", "precision", "recall", "f1",
                "support");
  out += buf;
  for (std::size_t c = 0; c < kSentimentClasses; ++c) {
    const auto& m = r.per_class[c];
    std::snprintf(buf, sizeof buf, "%-10s %9.4f %9.4f %9.4f %8zu\n",
                  std::string(to_string(sentiment_from_index(c))).c_str(), m.precision, m.recall,
                  m.f1, m.support);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-10s %9.4f %9.4f %9.4f %8zu\n",
                r.averaging == Averaging::macro ? "macro" : "micro", r.precision, r.recall, r.f1,
                r.total);
  out += buf;
  std::snprintf(buf, sizeof buf, "accuracy %.4f\nconfusion (rows = true, cols = predicted)\n",
                r.accuracy);
  out += buf;
  for (std::size_t t = 0; t < kSentimentClasses; ++t) {
    std::snprintf(buf, sizeof buf, "  %-10s %6zu %6zu %6zu\n",
                  std::string(to_string(sentiment_from_index(t))).c_str(), r.confusion[t][0],
                  r.confusion[t][1], r.confusion[t][2]);
    out += buf;
  }
  return out;
}

std::string report_json(const MetricsReport& r) {
  nlohmann::json j;
  j["averaging"] = r.averaging == Averaging::macro ? "macro" : "micro";
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["accuracy"] = r.accuracy;
  j["total"] = r.total;
  for (std::size_t c = 0; c < kSentimentClasses; ++c) {
    const auto& m = r.per_class[c];
    j["per_class"][std::string(to_string(sentiment_from_index(c)))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  j["confusion"] = r.confusion;
  return j.dump();
}

}  // namespace saint
