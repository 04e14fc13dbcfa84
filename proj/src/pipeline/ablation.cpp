#include "saint/pipeline/ablation.hpp"

#include <cstdio>
#include <json.hpp>

#include "saint/errors.hpp"

namespace saint {

std::vector<AblationRow> run_ablation(const Dataset& dataset, std::span<const int> variants,
                                      const TrainConfig& base, const Resources& resources,
                                      std::span<const std::uint64_t> seeds) {
  for (int v : variants) variant_flags(v);
  if (seeds.empty()) throw ConfigError("ablation needs at least one seed");
  const auto test = dataset.subset(Split::test);
  if (test.empty()) throw InputError("ablation needs a non-empty test split");

  std::vector<AblationRow> rows;
  for (int v : variants) {
    AblationRow row;
    row.variant = v;
    row.name = variant_name(v);
    for (auto seed : seeds) {
      TrainConfig config = base;
      config.set_variant(v);
      config.seed = seed;
      auto result = train(dataset, config, resources);
      const auto report = evaluate(result.model, test, config.averaging);
      row.precision += report.precision;
      row.recall += report.recall;
      row.f1 += report.f1;
    }
    row.seeds = seeds.size();
    const double n = static_cast<double>(seeds.size());
    row.precision /= n;
    row.recall /= n;
    row.f1 /= n;
    rows.push_back(row);
  }
  return rows;
}

std::string format_ablation_table(const std::vector<AblationRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-4s %-26s %9s %9s %9s\n", "#", "model", "precision", "recall",
                "f1");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-4d %-26s %9.4f %9.4f %9.4f\n", r.variant, r.name.c_str(),
                  r.precision, r.recall, r.f1);
    out += buf;
  }
  return out;
}

std::string ablation_json(const AblationRow& r) {
  nlohmann::json j{{"variant", r.variant}, {"model", r.name},     {"precision", r.precision},
                   {"recall", r.recall},   {"f1", r.f1},          {"seeds", r.seeds}};
  return j.dump();
}

}  // namespace saint
