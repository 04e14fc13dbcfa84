#include "saint/pipeline/train.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "saint/errors.hpp"
#include "saint/pipeline/preprocess.hpp"
#include "saint/tensor/sgd.hpp"
#include "saint/tensor/tape.hpp"
#include "saint/text/tokenizer.hpp"

namespace saint {

Resources Resources::load(const TrainConfig& config) {
  Resources r;
  if (!config.dictionary.empty()) r.dictionary = SentimentDictionary::load(config.dictionary);
  if (!config.antonyms.empty()) r.dictionary.load_antonyms(config.antonyms);
  if (!config.lexicon.empty()) r.lexicon = NegationLexicon::load(config.lexicon);
  if (!config.patterns.empty()) r.patterns = RulePatterns::load(config.patterns);
  if (!config.penalty.empty()) r.penalty = PenaltyMatrix::load(config.penalty);
  if (!config.embeddings.empty()) r.embeddings = load_embeddings(config.embeddings);
  return r;
}

namespace {

constexpr double kWordInitBound = 0.25;

EmbeddingMatrix fresh_embedding(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5851F42D4C957F2DULL);
  std::uniform_real_distribution<double> dist(-kWordInitBound, kWordInitBound);
  std::vector<double> values(rows * dim);
  for (auto& v : values) v = dist(rng);
  return EmbeddingMatrix(Tensor::from_values({rows, dim}, std::move(values), true));
}

EmbeddingMatrix frozen_copy(const EmbeddingMatrix& source) {
  const auto v = source.weights().values();
  Tensor copy = Tensor::from_values({source.rows(), source.dim()},
                                    std::vector<double>(v.begin(), v.end()), false);
  return EmbeddingMatrix(copy, true);
}

std::vector<std::vector<double>> snapshot(const std::vector<Tensor>& params) {
  std::vector<std::vector<double>> out;
  out.reserve(params.size());
  for (const auto& p : params) out.emplace_back(p.values().begin(), p.values().end());
  return out;
}

void restore(std::vector<Tensor>& params, const std::vector<std::vector<double>>& saved) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto dst = params[i].mutable_values();
    std::copy(saved[i].begin(), saved[i].end(), dst.begin());
  }
}

}  // namespace

AugmentResult training_samples(const Dataset& dataset, const TrainConfig& config,
                               const Resources& resources) {
  auto samples = dataset.subset(Split::train);
  if (samples.empty()) throw InputError("the train split is empty");
  const auto& f = config.flags;
  if (f.term_augment && resources.dictionary.empty()) {
    throw ConfigError("term augmentation needs a sentiment dictionary");
  }
  if (f.negation_augment && resources.lexicon.empty()) {
    throw ConfigError("negation augmentation needs a negation lexicon");
  }
  AugmentConfig aug;
  aug.term_swap = f.term_augment;
  aug.negation = f.negation_augment;
  aug.max_variants = config.max_variants;
  aug.seed = config.seed;
  return augment_dataset(samples, resources.dictionary, resources.lexicon, aug);
}

Classifier build_classifier(const std::vector<LabeledMessage>& samples, const TrainConfig& config,
                            const Resources& resources) {
  config.validate();
  std::vector<std::string> texts;
  texts.reserve(samples.size());
  for (const auto& s : samples) texts.push_back(prepare_text(s.text, s.target));
  ModelConfig model = config.model_config();
  CharVocabulary chars = CharVocabulary::build(texts);

  if (config.flags.transfer) {
    if (!resources.embeddings) throw ConfigError("transfer variants need an embeddings file");
    const auto& [matrix, vocab] = *resources.embeddings;
    model.word_dim = matrix.dim();
    return Classifier(model, vocab, std::move(chars), frozen_copy(matrix), resources.penalty,
                      config.flags.penalty);
  }
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(texts.size());
  for (const auto& t : texts) corpus.push_back(tokenize(t));
  Vocabulary vocab = Vocabulary::build(corpus, config.max_vocab);
  auto embedding = fresh_embedding(vocab.size(), model.word_dim, config.seed);
  return Classifier(model, std::move(vocab), std::move(chars), std::move(embedding),
                    resources.penalty, config.flags.penalty);
}

TrainResult train(const Dataset& dataset, const TrainConfig& config, const Resources& resources,
                  const EpochObserver& observer) {
  config.validate();
  auto augmented = training_samples(dataset, config, resources);
  const auto& samples = augmented.samples;
  const auto validation_set = dataset.subset(Split::validation);

  TrainResult result(build_classifier(samples, config, resources));
  result.training_samples = samples.size();
  result.conflicts = std::move(augmented.conflicts);
  Classifier& model = result.model;
  SentimentNet& net = model.net();
  const bool multitask = config.flags.multitask;

  std::vector<EncodedMessage> encoded;
  std::vector<std::size_t> sentiment_labels, rule_labels;
  encoded.reserve(samples.size());
  for (const auto& s : samples) {
    encoded.push_back(model.encode(s.text, s.target));
    sentiment_labels.push_back(index_of(s.sentiment));
    if (multitask) {
      const RuleLabel rule = s.rule ? *s.rule
                                    : tag_rule(prepare_text(s.text, s.target), resources.patterns,
                                               resources.dictionary);
      rule_labels.push_back(index_of(rule));
    }
  }

  auto params = net.parameters();
  auto score = [&]() -> std::optional<MetricsReport> {
    if (validation_set.empty()) return std::nullopt;
    return evaluate(model, validation_set, config.averaging);
  };
  result.validation = score();
  auto best = snapshot(params);
  std::size_t since_best = 0;

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffle_rng(config.seed ^ 0x2545F4914F6CDD1DULL);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<Tensor> totals;
      totals.reserve(end - start);
      double sentiment_sum = 0.0, rule_sum = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        const auto out = net.forward(encoded[i], Mode::train);
        Tensor s_loss = model.use_penalty()
                            ? weighted_cross_entropy(sentiment_labels[i], out.sentiment,
                                                     model.penalty())
                            : cross_entropy(sentiment_labels[i], out.sentiment);
        sentiment_sum += s_loss.item();
        if (multitask) {
          Tensor r_loss = cross_entropy(rule_labels[i], out.rule);
          rule_sum += r_loss.item();
          totals.push_back(multitask_loss(s_loss, r_loss));
        } else {
          totals.push_back(s_loss);
        }
      }
      Tensor loss = mean_loss(totals);
      backward(loss);
      sgd_step(params, config.learning_rate);
      zero_grad(params);

      const double n = static_cast<double>(end - start);
      result.batches.push_back(
          {epoch, batch_index++, end - start, sentiment_sum / n, rule_sum / n, loss.item()});
      epoch_loss += loss.item() * n;
    }

    EpochRecord record{epoch, epoch_loss / static_cast<double>(order.size()), score()};
    bool improved = false;
    if (record.validation) {
      improved = !result.validation || result.best_epoch == 0 ||
                 record.validation->f1 > result.validation->f1;
    }
    if (improved) {
      result.validation = record.validation;
      result.best_epoch = epoch;
      best = snapshot(params);
      since_best = 0;
    } else {
      ++since_best;
    }
    if (!record.validation) {
      result.best_epoch = epoch;
      best = snapshot(params);
    }
    result.epochs.push_back(record);
    if (observer) observer(result.epochs.back());
    if (record.validation && config.patience > 0 && since_best >= config.patience) break;
  }
  restore(params, best);
  return result;
}

}  // namespace saint
