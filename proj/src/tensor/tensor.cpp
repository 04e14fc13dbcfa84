#include "saint/tensor/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "saint/errors.hpp"

namespace saint {

std::string shape_to_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << 'x';
    out << shape[i];
  }
  out << ']';
  return out.str();
}

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

namespace {

void validate_shape(const Shape& shape) {
  if (shape.empty()) throw DimensionError("tensor shape must have at least one axis");
  for (auto d : shape) {
    if (d == 0) throw DimensionError("tensor shape " + shape_to_string(shape) + " has a zero axis");
  }
}

}  // namespace

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return filled(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::filled(Shape shape, double value, bool requires_grad) {
  validate_shape(shape);
  std::vector<double> values(shape_size(shape), value);
  return from_values(std::move(shape), std::move(values), requires_grad);
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values, bool requires_grad) {
  validate_shape(shape);
  if (shape_size(shape) != values.size()) {
    throw DimensionError("shape " + shape_to_string(shape) + " needs " +
                         std::to_string(shape_size(shape)) + " values, got " +
                         std::to_string(values.size()));
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->requires_grad = requires_grad;
  if (requires_grad) node->grad.assign(node->values.size(), 0.0);
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from_values({1}, {value}, requires_grad);
}

detail::Node& Tensor::checked() const {
  if (!node_) throw StateError("use of an undefined tensor");
  return *node_;
}

const Shape& Tensor::shape() const { return checked().shape; }

std::size_t Tensor::dim(std::size_t axis) const {
  const auto& s = shape();
  if (axis >= s.size()) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for shape " +
                         shape_to_string(s));
  }
  return s[axis];
}

std::size_t Tensor::size() const { return checked().values.size(); }

std::span<const double> Tensor::values() const { return checked().values; }
std::span<double> Tensor::mutable_values() { return checked().values; }

std::span<const double> Tensor::grad() const {
  auto& n = checked();
  if (!n.requires_grad) throw StateError("tensor does not require grad");
  return n.grad;
}

std::span<double> Tensor::mutable_grad() {
  auto& n = checked();
  if (!n.requires_grad) throw StateError("tensor does not require grad");
  return n.grad;
}

double Tensor::item() const {
  if (size() != 1) {
    throw DimensionError("item() on non-scalar tensor of shape " + shape_to_string(shape()));
  }
  return checked().values[0];
}

double Tensor::at(std::size_t i) const {
  const auto& v = checked().values;
  if (i >= v.size()) throw DimensionError("index " + std::to_string(i) + " out of range");
  return v[i];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  if (rank() != 2) throw DimensionError("at(row, col) needs a matrix, got " + shape_to_string(shape()));
  if (row >= dim(0) || col >= dim(1)) {
    throw DimensionError("index (" + std::to_string(row) + ", " + std::to_string(col) +
                         ") out of range for " + shape_to_string(shape()));
  }
  return checked().values[row * dim(1) + col];
}

bool Tensor::requires_grad() const { return checked().requires_grad; }

void Tensor::set_requires_grad(bool flag) {
  auto& n = checked();
  if (!n.inputs.empty()) throw StateError("requires_grad can only be changed on leaf tensors");
  n.requires_grad = flag;
  if (flag) {
    n.grad.assign(n.values.size(), 0.0);
  } else {
    n.grad.clear();
  }
}

void Tensor::zero_grad() {
  auto& n = checked();
  std::fill(n.grad.begin(), n.grad.end(), 0.0);
}

bool Tensor::is_leaf() const { return checked().inputs.empty() && !checked().backward; }

const std::string& Tensor::op_name() const { return checked().op; }

Tensor Tensor::detach() const {
  auto& n = checked();
  return from_values(n.shape, n.values, false);
}

}  // namespace saint
