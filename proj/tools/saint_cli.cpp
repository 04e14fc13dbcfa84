// Command-line front end: embeddings, augmentation, rule tagging, training,
// evaluation, ablation and classification.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saint/augment/augment.hpp"
#include "saint/embedding/embedding.hpp"
#include "saint/embedding/skipgram.hpp"
#include "saint/errors.hpp"
#include "saint/loss/loss.hpp"
#include "saint/pipeline/ablation.hpp"
#include "saint/pipeline/checkpoint.hpp"
#include "saint/pipeline/config.hpp"
#include "saint/pipeline/corpus.hpp"
#include "saint/pipeline/preprocess.hpp"
#include "saint/pipeline/train.hpp"
#include "saint/rules/rules.hpp"
#include "saint/text/tokenizer.hpp"

using namespace saint;
using nlohmann::json;

namespace {

enum class OutputFormat { table, jsonl };

std::string flag_name(const std::string& key) {
  std::string out = key;
  for (auto& c : out) {
    if (c == '_') c = '-';
  }
  return "--" + out;
}

// Options shared by every subcommand that builds a TrainConfig.
struct ConfigOptions {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value file applied before other flags")
        ->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "seed for every random choice");
    for (const auto& key : config_keys()) {
      if (key == "seed") continue;
      app->add_option_function<std::string>(
          flag_name(key), [this, key](const std::string& v) { values[key] = v; },
          "config field " + key);
    }
  }

  TrainConfig build() const {
    TrainConfig c;
    if (!config_file.empty()) load_config_file(c, config_file);
    // variant first so later flags can refine it
    if (auto it = values.find("variant"); it != values.end()) apply_config_value(c, it->first, it->second);
    for (const auto& [k, v] : values) {
      if (k != "variant") apply_config_value(c, k, v);
    }
    if (seed) c.seed = *seed;
    return c;
  }
};

void print_report(const MetricsReport& r, const std::string& label, OutputFormat format) {
  if (format == OutputFormat::table) {
    std::cout << label << "\n" << format_report(r);
  } else {
    auto j = json::parse(report_json(r));
    j["split"] = label;
    std::cout << j.dump() << "\n";
  }
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"saint: short-message sentiment analysis"};
  app.require_subcommand(1);
  OutputFormat format = OutputFormat::table;
  const std::map<std::string, OutputFormat> formats{{"table", OutputFormat::table},
                                                    {"jsonl", OutputFormat::jsonl}};
  app.add_option("--format", format, "table or jsonl")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  // embed-train
  auto* embed = app.add_subcommand("embed-train", "train skip-gram word embeddings");
  std::string embed_corpus, embed_out;
  SkipGramConfig sg;
  std::size_t embed_vocab = Vocabulary::kDefaultMaxSize;
  embed->add_option("--corpus", embed_corpus, "plain text (one message per line) or labelled corpus")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--output", embed_out, "embedding file to write")->required();
  embed->add_option("--dim", sg.dim, "vector size");
  embed->add_option("--window", sg.window_radius, "context radius");
  embed->add_option("--epochs", sg.epochs, "passes over the corpus");
  embed->add_option("--learning-rate", sg.learning_rate, "initial learning rate");
  embed->add_option("--negative", sg.negative_samples, "negative samples (0 = full softmax)");
  embed->add_option("--max-vocab", embed_vocab, "vocabulary cap including reserved tokens");
  embed->add_option("--seed", sg.rng_seed, "random seed");

  // augment
  auto* augment = app.add_subcommand("augment", "expand a labelled corpus with generated variants");
  std::string aug_corpus, aug_out, aug_dict, aug_antonyms, aug_lexicon;
  AugmentConfig aug;
  augment->add_option("--corpus", aug_corpus)->required()->check(CLI::ExistingFile);
  augment->add_option("--output", aug_out)->required();
  augment->add_option("--dictionary", aug_dict)->check(CLI::ExistingFile);
  augment->add_option("--antonyms", aug_antonyms)->check(CLI::ExistingFile);
  augment->add_option("--lexicon", aug_lexicon)->check(CLI::ExistingFile);
  augment->add_flag("--term-swap", aug.term_swap, "swap dictionary terms");
  augment->add_flag("--negation", aug.negation, "insert negations");
  augment->add_option("--max-variants", aug.max_variants, "cap on term variants per message");
  augment->add_option("--seed", aug.seed);

  // tag-rules
  auto* tag = app.add_subcommand("tag-rules", "label messages with a rule class");
  std::string tag_corpus, tag_patterns, tag_dict;
  std::vector<std::string> tag_texts;
  tag->add_option("--corpus", tag_corpus, "labelled corpus")->check(CLI::ExistingFile);
  tag->add_option("--text", tag_texts, "message (repeatable); stdin when neither is given");
  tag->add_option("--patterns", tag_patterns)->check(CLI::ExistingFile);
  tag->add_option("--dictionary", tag_dict)->check(CLI::ExistingFile);

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model variant");
  std::string train_corpus, train_out;
  ConfigOptions train_opts;
  train_cmd->add_option("--corpus", train_corpus)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--output", train_out, "checkpoint to write")->required();
  train_opts.attach(train_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a checkpoint on a labelled corpus");
  std::string eval_model, eval_corpus, eval_avg = "macro";
  eval_cmd->add_option("--model", eval_model)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--corpus", eval_corpus)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--averaging", eval_avg)->check(CLI::IsMember({"macro", "micro"}));

  // ablate
  auto* ablate = app.add_subcommand("ablate", "train and compare model variants");
  std::string ablate_corpus;
  std::vector<int> ablate_variants{2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<std::uint64_t> ablate_seeds{1};
  ConfigOptions ablate_opts;
  ablate->add_option("--corpus", ablate_corpus)->required()->check(CLI::ExistingFile);
  ablate->add_option("--variants", ablate_variants, "variant ids")->delimiter(',');
  ablate->add_option("--seeds", ablate_seeds, "seeds to average over")->delimiter(',');
  ablate_opts.attach(ablate);

  // classify
  auto* classify = app.add_subcommand("classify", "predict sentiment with a checkpoint");
  std::string classify_model, classify_target;
  std::vector<std::string> classify_texts;
  classify->add_option("--model", classify_model)->required()->check(CLI::ExistingFile);
  classify->add_option("--text", classify_texts, "message (repeatable); stdin when omitted");
  classify->add_option("--target", classify_target, "entity to mask before classifying");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*embed) {
      std::vector<std::vector<std::string>> corpus;
      std::ifstream in(embed_corpus);
      for (const auto& line : read_lines(in)) {
        const auto tab = line.find('\t');
        corpus.push_back(tokenize(tab == std::string::npos ? line : line.substr(0, tab)));
      }
      const auto vocab = Vocabulary::build(corpus, embed_vocab);
      std::vector<std::vector<std::size_t>> ids;
      ids.reserve(corpus.size());
      for (const auto& tokens : corpus) ids.push_back(vocab.encode(tokens));
      const auto matrix = train_skipgram(ids, vocab, sg);
      save_embeddings(matrix, vocab, embed_out);
      std::cerr << "wrote " << vocab.size() << " x " << matrix.dim() << " embeddings to "
                << embed_out << "\n";
    } else if (*augment) {
      SentimentDictionary dict;
      NegationLexicon lexicon;
      if (!aug_dict.empty()) dict = SentimentDictionary::load(aug_dict);
      if (!aug_antonyms.empty()) dict.load_antonyms(aug_antonyms);
      if (!aug_lexicon.empty()) lexicon = NegationLexicon::load(aug_lexicon);
      if (aug.term_swap && dict.empty()) throw ConfigError("--term-swap needs --dictionary");
      if (aug.negation && lexicon.empty()) throw ConfigError("--negation needs --lexicon");
      const auto samples = read_corpus(aug_corpus);
      const auto result = augment_dataset(samples, dict, lexicon, aug);
      write_corpus(result.samples, aug_out);
      for (const auto& c : result.conflicts) {
        std::cerr << "conflict: \"" << c.text << "\" kept " << to_string(c.kept) << ", dropped "
                  << to_string(c.rejected) << "\n";
      }
      if (format == OutputFormat::jsonl) {
        std::cout << json{{"input", samples.size()},
                          {"output", result.samples.size()},
                          {"conflicts", result.conflicts.size()}}
                         .dump()
                  << "\n";
      } else {
        std::cout << samples.size() << " messages in, " << result.samples.size() << " out, "
                  << result.conflicts.size() << " conflicts\n";
      }
    } else if (*tag) {
      RulePatterns patterns = tag_patterns.empty() ? RulePatterns::defaults() : RulePatterns::load(tag_patterns);
      SentimentDictionary dict;
      if (!tag_dict.empty()) dict = SentimentDictionary::load(tag_dict);
      std::vector<std::string> texts = tag_texts;
      if (!tag_corpus.empty()) {
        for (const auto& m : read_corpus(tag_corpus)) texts.push_back(prepare_text(m.text, m.target));
      }
      if (texts.empty()) texts = read_lines(std::cin);
      for (const auto& t : texts) {
        const auto rule = tag_rule(t, patterns, dict);
        if (format == OutputFormat::jsonl) {
          std::cout << json{{"text", t}, {"rule", to_string(rule)}, {"encoding", one_hot(rule)}}.dump()
                    << "\n";
        } else {
          std::cout << to_string(rule) << "\t" << t << "\n";
        }
      }
    } else if (*train_cmd) {
      const TrainConfig config = train_opts.build();
      const auto resources = Resources::load(config);
      const auto dataset = split_dataset(read_corpus(train_corpus), config.ratios, config.seed);
      auto on_epoch = [format](const EpochRecord& e) {
        if (format == OutputFormat::jsonl) {
          json j{{"epoch", e.epoch}, {"loss", e.mean_loss}};
          if (e.validation) j["validation_f1"] = e.validation->f1;
          std::cout << j.dump() << "\n";
        } else {
          std::cout << "epoch " << e.epoch << "  loss " << e.mean_loss;
          if (e.validation) std::cout << "  val F " << e.validation->f1;
          std::cout << "\n";
        }
      };
      auto result = train(dataset, config, resources, on_epoch);
      checkpoint_save(result.model, train_out);
      if (result.validation) print_report(*result.validation, "validation", format);
      if (dataset.count(Split::test) > 0) {
        print_report(evaluate(result.model, dataset.subset(Split::test), config.averaging), "test",
                     format);
      }
      std::cerr << "best epoch " << result.best_epoch << ", " << result.training_samples
                << " training messages, checkpoint " << train_out << "\n";
    } else if (*eval_cmd) {
      auto model = checkpoint_load(eval_model);
      const auto samples = read_corpus(eval_corpus);
      print_report(evaluate(model, samples, eval_avg == "micro" ? Averaging::micro : Averaging::macro),
                   eval_corpus, format);
    } else if (*ablate) {
      const TrainConfig config = ablate_opts.build();
      const auto resources = Resources::load(config);
      const auto dataset = split_dataset(read_corpus(ablate_corpus), config.ratios, config.seed);
      const auto rows = run_ablation(dataset, ablate_variants, config, resources, ablate_seeds);
      if (format == OutputFormat::jsonl) {
        for (const auto& r : rows) std::cout << ablation_json(r) << "\n";
      } else {
        std::cout << format_ablation_table(rows);
      }
    } else if (*classify) {
      auto model = checkpoint_load(classify_model);
      std::vector<std::string> texts = classify_texts;
      if (texts.empty()) texts = read_lines(std::cin);
      std::optional<std::string> target;
      if (!classify_target.empty()) target = classify_target;
      for (const auto& t : texts) {
        const auto p = model.probabilities(t, target);
        const auto label = sentiment_from_index(argmax(p));
        if (format == OutputFormat::jsonl) {
          json j{{"text", t}, {"sentiment", to_string(label)}, {"probabilities", p}};
          if (auto r = model.rule_probabilities(t, target)) {
            j["rule"] = to_string(rule_from_index(argmax(*r)));
          }
          std::cout << j.dump() << "\n";
        } else {
          std::printf("%-8s %.4f %.4f %.4f\t%s\n", std::string(to_string(label)).c_str(), p[0], p[1],
                      p[2], t.c_str());
        }
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
