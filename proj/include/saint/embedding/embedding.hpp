#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>

#include "saint/embedding/vocabulary.hpp"
#include "saint/tensor/tensor.hpp"

namespace saint {

// M x K word-vector table. Row Vocabulary::kPad is pinned to zeros.
class EmbeddingMatrix {
 public:
  static constexpr std::size_t kDefaultDim = 320;

  EmbeddingMatrix() = default;
  // Takes ownership of a [M x K] tensor; the PAD row is forced to zero.
  explicit EmbeddingMatrix(Tensor weights, bool frozen = false);

  // Uniform in [-0.5/K, 0.5/K], PAD row zero.
  static EmbeddingMatrix random(std::size_t rows, std::size_t dim, std::uint64_t seed);

  std::size_t rows() const { return weights_.dim(0); }
  std::size_t dim() const { return weights_.dim(1); }
  const Tensor& weights() const { return weights_; }
  Tensor& weights() { return weights_; }

  bool frozen() const { return frozen_; }
  // Frozen weights drop out of the graph: backward never writes them and
  // sgd_step skips them.
  void set_frozen(bool flag);

 private:
  Tensor weights_;
  bool frozen_ = false;
};

inline void set_frozen(EmbeddingMatrix& matrix, bool flag) { matrix.set_frozen(flag); }

// Row lookup E = D x W without materializing D. Result is [N x K].
Tensor embed_sequence(std::span<const std::size_t> ids, const EmbeddingMatrix& matrix);

// Text format: "EMB <M> <K>" then one line per row: token and K values.
void save_embeddings(const EmbeddingMatrix& matrix, const Vocabulary& vocab,
                     const std::filesystem::path& path);
std::pair<EmbeddingMatrix, Vocabulary> load_embeddings(const std::filesystem::path& path);

}  // namespace saint
