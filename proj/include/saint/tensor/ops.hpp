#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "saint/tensor/tensor.hpp"

// Differentiable operations. Every function returns a new tensor; when any
// input requires grad the result records a backward function on the graph.
// Shapes are never broadcast: mismatches raise DimensionError.

namespace saint {

enum class UnaryKind { sigmoid, tanh, relu, ln };
enum class BinaryKind { add, subtract, hadamard };

Tensor unary(const Tensor& x, UnaryKind kind);
Tensor sigmoid(const Tensor& x);
Tensor tanh(const Tensor& x);
Tensor relu(const Tensor& x);
// Natural log; every entry must be strictly positive.
Tensor ln(const Tensor& x);

Tensor binary(const Tensor& a, const Tensor& b, BinaryKind kind);
Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);

// scale * x + shift, elementwise, with constant scale and shift.
Tensor affine(const Tensor& x, double scale, double shift);
Tensor scale(const Tensor& x, double factor);
// max(x, floor). Entries at or below the floor receive no gradient.
Tensor clamp_min(const Tensor& x, double floor);

// [m x k] * [k x n] -> [m x n]
Tensor matmul(const Tensor& a, const Tensor& b);
// [m x k] * [k] -> [m]
Tensor matvec(const Tensor& a, const Tensor& x);

// Softmax over a rank-1 tensor, max-subtracted.
Tensor softmax(const Tensor& x);

// Concatenation along `axis`; parts must agree on every other axis.
Tensor concat(std::span<const Tensor> parts, std::size_t axis);
Tensor concat(std::initializer_list<Tensor> parts, std::size_t axis);
// Half-open range [begin, end) along `axis`.
Tensor slice(const Tensor& x, std::size_t axis, std::size_t begin, std::size_t end);
// Row i of a matrix as a rank-1 tensor.
Tensor row(const Tensor& x, std::size_t i);
// Stack equal-length rank-1 tensors into a matrix, one per row.
Tensor stack_rows(std::span<const Tensor> rows);
Tensor reshape(const Tensor& x, Shape shape);
Tensor flatten(const Tensor& x);

Tensor sum(const Tensor& x);
// Entry i as a [1] tensor.
Tensor select(const Tensor& x, std::size_t i);

// Row lookup into a [M x K] table; result is [ids.size() x K]. Lookups of
// `pinned_row` read as zeros and send no gradient back.
Tensor gather_rows(const Tensor& table, std::span<const std::size_t> ids,
                   std::optional<std::size_t> pinned_row = std::nullopt);

// Valid sliding-window correlation of E [N x K] with filters [f x d x K] plus
// bias [f]: out[i][j] = sum_{a,k} filters[j][a][k] * E[i+a][k] + bias[j],
// giving [(N-d+1) x f].
Tensor conv_rows(const Tensor& input, const Tensor& filters, const Tensor& bias);
// Append zero rows until the matrix has `rows` rows.
Tensor pad_rows(const Tensor& x, std::size_t rows);
// Non-overlapping max over blocks of q consecutive rows, per column:
// [N x f] -> [N/q x f]. Gradient goes to the first maximum of each block.
Tensor max_pool_rows(const Tensor& x, std::size_t q);

}  // namespace saint
