#include "saint/pipeline/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "saint/errors.hpp"

namespace saint {

namespace {

constexpr std::string_view kMagic = "saint-checkpoint";

void put_double(std::string& out, double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, p);
}

std::string encoder_name(EncoderKind e) { return e == EncoderKind::gru ? "gru" : "cnn"; }

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
  }
  return "relu";
}

// Line cursor over the whole archive.
class Reader {
 public:
  explicit Reader(std::string text) : text_(std::move(text)) {}

  std::string_view line() {
    if (pos_ >= text_.size()) throw FormatError("checkpoint truncated after line " + std::to_string(line_no_));
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string::npos) throw FormatError("checkpoint truncated at line " + std::to_string(line_no_ + 1));
    std::string_view out(text_.data() + pos_, nl - pos_);
    pos_ = nl + 1;
    ++line_no_;
    return out;
  }

  void expect(std::string_view want) {
    const auto got = line();
    if (got != want) fail("expected '" + std::string(want) + "'");
  }

  // "key value" line; returns value.
  std::string_view field(std::string_view key) {
    const auto l = line();
    if (l.size() <= key.size() || l.substr(0, key.size()) != key || l[key.size()] != ' ') {
      fail("expected field '" + std::string(key) + "'");
    }
    return l.substr(key.size() + 1);
  }

  std::size_t size_field(std::string_view key) { return to_size(field(key)); }

  std::size_t to_size(std::string_view v) {
    std::size_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail("bad integer '" + std::string(v) + "'");
    return out;
  }

  std::vector<double> doubles(std::size_t count) {
    const auto l = line();
    std::vector<double> out;
    out.reserve(count);
    const char* p = l.data();
    const char* end = l.data() + l.size();
    while (p < end) {
      if (*p == ' ') {
        ++p;
        continue;
      }
      double v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) fail("bad number");
      out.push_back(v);
      p = next;
    }
    if (out.size() != count) {
      fail("expected " + std::to_string(count) + " values, found " + std::to_string(out.size()));
    }
    return out;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("checkpoint line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

bool to_bool(Reader& r, std::string_view v) {
  if (v == "1") return true;
  if (v == "0") return false;
  r.fail("bad flag '" + std::string(v) + "'");
}

}  // namespace

void checkpoint_save(const Classifier& model, const std::filesystem::path& path) {
  const auto& c = model.config();
  std::string out;
  auto kv = [&out](std::string_view key, const std::string& value) {
    out.append(key);
    out += ' ';
    out += value;
    out += '\n';
  };
  out += std::string(kMagic) + " " + std::to_string(kCheckpointVersion) + "\n";
  out += "[config]\n";
  kv("encoder", encoder_name(c.encoder));
  kv("sequence_length", std::to_string(c.sequence_length));
  kv("word_dim", std::to_string(c.word_dim));
  kv("use_char", c.use_char ? "1" : "0");
  kv("char_dim", std::to_string(c.char_dim));
  kv("char_hidden", std::to_string(c.char_hidden));
  kv("gru_hidden", std::to_string(c.gru_hidden));
  kv("gru_bias", c.gru_bias ? "1" : "0");
  kv("cnn_filters", std::to_string(c.cnn_filters));
  kv("cnn_height", std::to_string(c.cnn_height));
  kv("cnn_pool", std::to_string(c.cnn_pool));
  kv("cnn_activation", activation_name(c.cnn_activation));
  kv("multitask", c.multitask ? "1" : "0");
  {
    std::string d;
    put_double(d, c.drop_rate);
    kv("drop_rate", d);
  }
  kv("seed", std::to_string(c.seed));

  out += "[vocabulary]\n";
  kv("count", std::to_string(model.vocabulary().size()));
  for (const auto& t : model.vocabulary().tokens()) out += t + "\n";

  out += "[chars]\n";
  const auto& cps = model.char_vocabulary().code_points();
  kv("count", std::to_string(cps.size()));
  for (auto cp : cps) {
    out += std::to_string(static_cast<std::uint32_t>(cp));
    out += ' ';
  }
  out += "\n";

  out += "[penalty]\n";
  kv("enabled", model.use_penalty() ? "1" : "0");
  for (const auto& row : model.penalty().weights()) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ' ';
      put_double(out, row[k]);
    }
    out += '\n';
  }

  out += "[tensors]\n";
  kv("frozen_embedding", model.net().embeddings().frozen() ? "1" : "0");
  const auto params = model.net().named_parameters();
  kv("count", std::to_string(params.size()));
  for (const auto& [name, t] : params) {
    out += name;
    out += ' ';
    out += std::to_string(t.rank());
    for (auto d : t.shape()) out += ' ' + std::to_string(d);
    out += '\n';
    bool first = true;
    for (double v : t.values()) {
      if (!first) out += ' ';
      first = false;
      put_double(out, v);
    }
    out += '\n';
  }
  out += "[end]\n";

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write checkpoint " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw InputError("write failed for checkpoint " + path.string());
}

Classifier checkpoint_load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  Reader r(buf.str());

  const auto header = r.line();
  if (header.substr(0, kMagic.size()) != kMagic || header.size() <= kMagic.size() + 1) {
    r.fail("not a checkpoint archive");
  }
  const auto version = r.to_size(header.substr(kMagic.size() + 1));
  if (version != static_cast<std::size_t>(kCheckpointVersion)) {
    throw FormatError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kCheckpointVersion) + ")");
  }

  r.expect("[config]");
  ModelConfig c;
  const auto enc = r.field("encoder");
  if (enc == "gru") c.encoder = EncoderKind::gru;
  else if (enc == "cnn") c.encoder = EncoderKind::cnn;
  else r.fail("unknown encoder");
  c.sequence_length = r.size_field("sequence_length");
  c.word_dim = r.size_field("word_dim");
  c.use_char = to_bool(r, r.field("use_char"));
  c.char_dim = r.size_field("char_dim");
  c.char_hidden = r.size_field("char_hidden");
  c.gru_hidden = r.size_field("gru_hidden");
  c.gru_bias = to_bool(r, r.field("gru_bias"));
  c.cnn_filters = r.size_field("cnn_filters");
  c.cnn_height = r.size_field("cnn_height");
  c.cnn_pool = r.size_field("cnn_pool");
  const auto act = r.field("cnn_activation");
  if (act == "relu") c.cnn_activation = Activation::relu;
  else if (act == "tanh") c.cnn_activation = Activation::tanh;
  else if (act == "sigmoid") c.cnn_activation = Activation::sigmoid;
  else r.fail("unknown activation");
  c.multitask = to_bool(r, r.field("multitask"));
  {
    const auto v = r.field("drop_rate");
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), c.drop_rate);
    if (ec != std::errc() || p != v.data() + v.size()) r.fail("bad drop_rate");
  }
  c.seed = r.size_field("seed");

  r.expect("[vocabulary]");
  const auto vocab_count = r.size_field("count");
  std::vector<std::string> tokens;
  tokens.reserve(vocab_count);
  for (std::size_t i = 0; i < vocab_count; ++i) tokens.emplace_back(r.line());
  Vocabulary vocab = Vocabulary::from_tokens(std::move(tokens));

  r.expect("[chars]");
  const auto char_count = r.size_field("count");
  std::vector<char32_t> cps;
  {
    const auto l = r.line();
    std::istringstream in{std::string(l)};
    std::uint32_t cp = 0;
    while (in >> cp) cps.push_back(static_cast<char32_t>(cp));
    if (cps.size() != char_count) r.fail("character count mismatch");
  }
  CharVocabulary chars = CharVocabulary::from_code_points(cps);

  r.expect("[penalty]");
  const bool use_penalty = to_bool(r, r.field("enabled"));
  PenaltyMatrix::Weights w{};
  for (auto& row : w) {
    const auto v = r.doubles(row.size());
    std::copy(v.begin(), v.end(), row.begin());
  }
  PenaltyMatrix penalty(w);

  r.expect("[tensors]");
  const bool frozen = to_bool(r, r.field("frozen_embedding"));
  const auto tensor_count = r.size_field("count");
  std::map<std::string, std::pair<Shape, std::vector<double>>> stored;
  for (std::size_t i = 0; i < tensor_count; ++i) {
    std::istringstream head{std::string(r.line())};
    std::string name;
    std::size_t rank = 0;
    if (!(head >> name >> rank) || rank == 0) r.fail("bad tensor header");
    Shape shape(rank);
    for (auto& d : shape) {
      if (!(head >> d) || d == 0) r.fail("bad tensor shape for " + name);
    }
    auto values = r.doubles(shape_size(shape));
    if (!stored.emplace(name, std::make_pair(std::move(shape), std::move(values))).second) {
      r.fail("duplicate tensor " + name);
    }
  }
  r.expect("[end]");
  if (!r.at_end()) r.fail("trailing data after [end]");

  auto emb_it = stored.find("embedding");
  if (emb_it == stored.end()) throw FormatError("checkpoint has no embedding tensor");
  const auto& [emb_shape, emb_values] = emb_it->second;
  if (emb_shape.size() != 2 || emb_shape[0] != vocab.size() || emb_shape[1] != c.word_dim) {
    throw FormatError("embedding shape " + shape_to_string(emb_shape) +
                      " disagrees with the vocabulary and config");
  }
  EmbeddingMatrix embedding(Tensor::from_values(emb_shape, emb_values, !frozen), frozen);

  Classifier model(c, std::move(vocab), std::move(chars), std::move(embedding), penalty, use_penalty);
  const auto params = model.net().named_parameters();
  if (params.size() != stored.size()) {
    throw FormatError("checkpoint holds " + std::to_string(stored.size()) +
                      " tensors, model expects " + std::to_string(params.size()));
  }
  for (auto [name, t] : params) {
    auto it = stored.find(name);
    if (it == stored.end()) throw FormatError("checkpoint is missing tensor " + name);
    if (it->second.first != t.shape()) {
      throw FormatError("tensor " + name + " has shape " + shape_to_string(it->second.first) +
                        ", expected " + shape_to_string(t.shape()));
    }
    auto dst = t.mutable_values();
    std::copy(it->second.second.begin(), it->second.second.end(), dst.begin());
  }
  return model;
}

}  // namespace saint
