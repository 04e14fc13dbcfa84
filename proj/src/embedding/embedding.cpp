#include "saint/embedding/embedding.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"

namespace saint {

EmbeddingMatrix::EmbeddingMatrix(Tensor weights, bool frozen) : weights_(std::move(weights)) {
  if (!weights_.defined() || weights_.rank() != 2) {
    throw DimensionError("embedding weights must be a matrix");
  }
  if (!weights_.is_leaf()) throw StateError("embedding weights must be a leaf tensor");
  auto v = weights_.mutable_values();
  for (std::size_t c = 0; c < dim(); ++c) v[Vocabulary::kPad * dim() + c] = 0.0;
  set_frozen(frozen);
}

EmbeddingMatrix EmbeddingMatrix::random(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  if (rows <= Vocabulary::kPad || dim == 0) throw ConfigError("embedding needs rows and dim > 0");
  std::mt19937_64 rng(seed);
  const double bound = 0.5 / static_cast<double>(dim);
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> values(rows * dim);
  for (auto& v : values) v = dist(rng);
  return EmbeddingMatrix(Tensor::from_values({rows, dim}, std::move(values)));
}

void EmbeddingMatrix::set_frozen(bool flag) {
  frozen_ = flag;
  weights_.set_requires_grad(!flag);
}

Tensor embed_sequence(std::span<const std::size_t> ids, const EmbeddingMatrix& matrix) {
  for (auto id : ids) {
    if (id >= matrix.rows()) {
      throw InputError("token index " + std::to_string(id) + " outside vocabulary of size " +
                       std::to_string(matrix.rows()));
    }
  }
  return gather_rows(matrix.weights(), ids, Vocabulary::kPad);
}

void save_embeddings(const EmbeddingMatrix& matrix, const Vocabulary& vocab,
                     const std::filesystem::path& path) {
  if (matrix.rows() != vocab.size()) {
    throw DimensionError("embedding has " + std::to_string(matrix.rows()) +
                         " rows but vocabulary has " + std::to_string(vocab.size()) + " tokens");
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write embeddings to " + path.string());
  out << "EMB " << matrix.rows() << ' ' << matrix.dim() << '\n';
  const auto v = matrix.weights().values();
  char buf[40];
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << vocab.token(r);
    for (std::size_t c = 0; c < matrix.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", v[r * matrix.dim() + c]);
      out << ' ' << buf;
    }
    out << '\n';
  }
  if (!out) throw InputError("write failed for " + path.string());
}

std::pair<EmbeddingMatrix, Vocabulary> load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read embeddings from " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("embedding file is empty");
  std::istringstream header(line);
  std::string magic;
  std::size_t rows = 0, dim = 0;
  if (!(header >> magic >> rows >> dim) || magic != "EMB" || rows == 0 || dim == 0) {
    throw FormatError("bad embedding header '" + line + "'");
  }
  std::vector<std::string> tokens;
  std::vector<double> values;
  tokens.reserve(rows);
  values.reserve(rows * dim);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw FormatError("embedding file truncated: expected " + std::to_string(rows) +
                        " rows, found " + std::to_string(r));
    }
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) throw FormatError("missing token on row " + std::to_string(r));
    for (std::size_t c = 0; c < dim; ++c) {
      std::string field;
      if (!(fields >> field)) {
        throw FormatError("row " + std::to_string(r) + " has fewer than " + std::to_string(dim) +
                          " values");
      }
      char* end = nullptr;
      const double value = std::strtod(field.c_str(), &end);
      if (end != field.c_str() + field.size()) {
        throw FormatError("bad number '" + field + "' on row " + std::to_string(r));
      }
      values.push_back(value);
    }
    std::string extra;
    if (fields >> extra) {
      throw FormatError("row " + std::to_string(r) + " has more than " + std::to_string(dim) +
                        " values");
    }
    tokens.push_back(std::move(token));
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("trailing data after " + std::to_string(rows) + " rows");
  }
  auto vocab = Vocabulary::from_tokens(std::move(tokens));
  EmbeddingMatrix matrix(Tensor::from_values({rows, dim}, std::move(values)));
  return {std::move(matrix), std::move(vocab)};
}

}  // namespace saint
