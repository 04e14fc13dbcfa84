#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace saint {

using Shape = std::vector<std::size_t>;

std::string shape_to_string(const Shape& shape);
std::size_t shape_size(const Shape& shape);

namespace detail {

// One vertex of the computation graph. Leaves have no inputs and no backward
// function; operation results keep their inputs alive through `inputs`.
struct Node {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;
  bool requires_grad = false;
  std::string op = "leaf";
  std::vector<std::shared_ptr<Node>> inputs;
  // Reads this node's grad and accumulates into the grads of `inputs`.
  std::function<void(Node&)> backward;
};

}  // namespace detail

/// Dense row-major array of doubles with an optional gradient buffer.
///
/// Tensor is a handle: copies share the same storage and graph node. Use
/// `detach()` for an independent copy of the values.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor filled(Shape shape, double value, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const;

  std::span<const double> values() const;
  std::span<double> mutable_values();
  std::span<const double> grad() const;
  std::span<double> mutable_grad();

  double item() const;
  double at(std::size_t i) const;
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const;
  // Allocates (or releases) the gradient buffer. Only valid on leaves.
  void set_requires_grad(bool flag);
  void zero_grad();

  bool is_leaf() const;
  const std::string& op_name() const;

  // Fresh leaf holding a copy of the values; never requires grad.
  Tensor detach() const;

  const std::shared_ptr<detail::Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  detail::Node& checked() const;
  std::shared_ptr<detail::Node> node_;
};

}  // namespace saint
