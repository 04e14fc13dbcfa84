#include "saint/pipeline/config.hpp"

#include <charconv>
#include <fstream>

#include "saint/errors.hpp"

namespace saint {

VariantFlags variant_flags(int variant) {
  if (variant < kFirstVariant || variant > kLastVariant) {
    throw ConfigError("unknown model variant #" + std::to_string(variant) + " (expected " +
                      std::to_string(kFirstVariant) + ".." + std::to_string(kLastVariant) + ")");
  }
  VariantFlags f;
  f.term_augment = variant >= 3;
  f.penalty = variant >= 4;
  f.negation_augment = variant >= 5;
  f.transfer = variant >= 6;
  f.char_embedding = variant >= 7;
  f.encoder = variant >= 8 ? EncoderKind::gru : EncoderKind::cnn;
  f.multitask = variant >= 9;
  return f;
}

std::string variant_name(int variant) {
  static const char* names[] = {"CNN baseline",        "CNN +aug",
                                "CNN +aug +penalty",   "CNN +aug +neg +penalty",
                                "CNN +transfer",       "CNN +transfer +char",
                                "GRU +transfer +char", "GRU +multitask"};
  variant_flags(variant);
  return names[variant - kFirstVariant];
}

void TrainConfig::set_variant(int id) {
  flags = variant_flags(id);
  variant = id;
}

ModelConfig TrainConfig::model_config() const {
  ModelConfig m;
  m.encoder = flags.encoder;
  m.sequence_length = sequence_length;
  m.word_dim = word_dim;
  m.use_char = flags.char_embedding;
  m.char_dim = char_dim;
  m.char_hidden = char_hidden;
  m.gru_hidden = gru_hidden;
  m.gru_bias = gru_bias;
  m.cnn_filters = cnn_filters;
  m.cnn_height = cnn_height;
  m.cnn_pool = cnn_pool;
  m.multitask = flags.multitask;
  m.drop_rate = drop_rate;
  m.seed = seed;
  return m;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(sequence_length > 0, "sequence_length must be positive");
  require(word_dim > 0 && char_dim > 0 && char_hidden > 0 && gru_hidden > 0,
          "layer sizes must be positive");
  require(cnn_filters > 0 && cnn_height > 0 && cnn_pool > 0, "cnn sizes must be positive");
  require(drop_rate >= 0.0 && drop_rate < 1.0, "drop_rate must lie in [0, 1)");
  require(batch_size > 0, "batch_size must be positive");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(max_vocab >= 3, "max_vocab must leave room for the reserved tokens");
  if (flags.encoder == EncoderKind::cnn) {
    require(sequence_length % cnn_pool == 0, "cnn_pool must divide sequence_length");
    require(cnn_height <= sequence_length, "cnn_height exceeds sequence_length");
  }
}

namespace {

std::size_t parse_size(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + std::string(key) + "' expects a boolean, got '" + std::string(v) + "'");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::vector<std::string>& keys() {
  static const std::vector<std::string> k = {
      "variant",        "encoder",         "term_augment",   "penalty_matrix", "negation_augment",
      "transfer",       "char_embedding",  "multitask",      "sequence_length", "word_dim",
      "char_dim",       "char_hidden",     "gru_hidden",     "gru_bias",       "cnn_filters",
      "cnn_height",     "cnn_pool",        "drop_rate",      "epochs",         "batch_size",
      "learning_rate",  "patience",        "seed",           "max_vocab",      "max_variants",
      "averaging",      "train_ratio",     "validation_ratio", "test_ratio",   "dictionary",
      "antonyms",       "lexicon",         "patterns",       "embeddings",     "penalty"};
  return k;
}

}  // namespace

std::vector<std::string> config_keys() { return keys(); }

void apply_config_value(TrainConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "variant") {
    c.set_variant(static_cast<int>(parse_size(key, value)));
  } else if (key == "encoder") {
    if (value == "cnn") c.flags.encoder = EncoderKind::cnn;
    else if (value == "gru") c.flags.encoder = EncoderKind::gru;
    else throw ConfigError("encoder must be cnn or gru, got '" + std::string(value) + "'");
  } else if (key == "term_augment") {
    c.flags.term_augment = parse_bool(key, value);
  } else if (key == "penalty_matrix") {
    c.flags.penalty = parse_bool(key, value);
  } else if (key == "negation_augment") {
    c.flags.negation_augment = parse_bool(key, value);
  } else if (key == "transfer") {
    c.flags.transfer = parse_bool(key, value);
  } else if (key == "char_embedding") {
    c.flags.char_embedding = parse_bool(key, value);
  } else if (key == "multitask") {
    c.flags.multitask = parse_bool(key, value);
  } else if (key == "sequence_length") {
    c.sequence_length = parse_size(key, value);
  } else if (key == "word_dim") {
    c.word_dim = parse_size(key, value);
  } else if (key == "char_dim") {
    c.char_dim = parse_size(key, value);
  } else if (key == "char_hidden") {
    c.char_hidden = parse_size(key, value);
  } else if (key == "gru_hidden") {
    c.gru_hidden = parse_size(key, value);
  } else if (key == "gru_bias") {
    c.gru_bias = parse_bool(key, value);
  } else if (key == "cnn_filters") {
    c.cnn_filters = parse_size(key, value);
  } else if (key == "cnn_height") {
    c.cnn_height = parse_size(key, value);
  } else if (key == "cnn_pool") {
    c.cnn_pool = parse_size(key, value);
  } else if (key == "drop_rate") {
    c.drop_rate = parse_double(key, value);
  } else if (key == "epochs") {
    c.epochs = parse_size(key, value);
  } else if (key == "batch_size") {
    c.batch_size = parse_size(key, value);
  } else if (key == "learning_rate") {
    c.learning_rate = parse_double(key, value);
  } else if (key == "patience") {
    c.patience = parse_size(key, value);
  } else if (key == "seed") {
    c.seed = parse_size(key, value);
  } else if (key == "max_vocab") {
    c.max_vocab = parse_size(key, value);
  } else if (key == "max_variants") {
    c.max_variants = parse_size(key, value);
  } else if (key == "averaging") {
    if (value == "macro") c.averaging = Averaging::macro;
    else if (value == "micro") c.averaging = Averaging::micro;
    else throw ConfigError("averaging must be macro or micro, got '" + std::string(value) + "'");
  } else if (key == "train_ratio") {
    c.ratios.train = parse_double(key, value);
  } else if (key == "validation_ratio") {
    c.ratios.validation = parse_double(key, value);
  } else if (key == "test_ratio") {
    c.ratios.test = parse_double(key, value);
  } else if (key == "dictionary") {
    c.dictionary = std::string(value);
  } else if (key == "antonyms") {
    c.antonyms = std::string(value);
  } else if (key == "lexicon") {
    c.lexicon = std::string(value);
  } else if (key == "patterns") {
    c.patterns = std::string(value);
  } else if (key == "embeddings") {
    c.embeddings = std::string(value);
  } else if (key == "penalty") {
    c.penalty = std::string(value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void load_config_file(TrainConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_config_value(config, trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace saint
