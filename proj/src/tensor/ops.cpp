#include "saint/tensor/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "saint/errors.hpp"

namespace saint {

namespace {

using detail::Node;
using NodePtr = std::shared_ptr<Node>;
using BackwardFn = std::function<void(Node&)>;

Tensor make_result(Shape shape, std::vector<double> values, const char* op,
                   std::vector<NodePtr> inputs, BackwardFn backward) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->op = op;
  const bool needs_grad = std::any_of(inputs.begin(), inputs.end(),
                                      [](const NodePtr& n) { return n->requires_grad; });
  if (needs_grad) {
    node->requires_grad = true;
    node->grad.assign(node->values.size(), 0.0);
    node->inputs = std::move(inputs);
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

void require_rank(const Tensor& x, std::size_t rank, const char* op) {
  if (x.rank() != rank) {
    throw DimensionError(std::string(op) + " expects a rank-" + std::to_string(rank) +
                         " tensor, got " + shape_to_string(x.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) +
                         " vs " + shape_to_string(b.shape()));
  }
}

// Splits a shape around `axis` into (outer, extent, inner) products.
struct AxisSplit {
  std::size_t outer = 1;
  std::size_t extent = 1;
  std::size_t inner = 1;
};

AxisSplit split_axis(const Shape& shape, std::size_t axis) {
  AxisSplit s;
  for (std::size_t i = 0; i < axis; ++i) s.outer *= shape[i];
  s.extent = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) s.inner *= shape[i];
  return s;
}

double sigmoid_scalar(double v) {
  if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

}  // namespace

Tensor unary(const Tensor& x, UnaryKind kind) {
  const auto in = x.values();
  std::vector<double> out(in.size());
  const char* name = "";
  switch (kind) {
    case UnaryKind::sigmoid:
      name = "sigmoid";
      for (std::size_t i = 0; i < in.size(); ++i) out[i] = sigmoid_scalar(in[i]);
      break;
    case UnaryKind::tanh:
      name = "tanh";
      for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::tanh(in[i]);
      break;
    case UnaryKind::relu:
      name = "relu";
      for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
      break;
    case UnaryKind::ln:
      name = "ln";
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (!(in[i] > 0.0)) {
          throw DomainError("ln of non-positive entry " + std::to_string(in[i]) + " at index " +
                            std::to_string(i));
        }
        out[i] = std::log(in[i]);
      }
      break;
  }
  return make_result(x.shape(), std::move(out), name, {x.node()}, [kind](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    const auto n = self.values.size();
    switch (kind) {
      case UnaryKind::sigmoid:
        for (std::size_t i = 0; i < n; ++i) {
          const double y = self.values[i];
          src.grad[i] += self.grad[i] * y * (1.0 - y);
        }
        break;
      case UnaryKind::tanh:
        for (std::size_t i = 0; i < n; ++i) {
          const double y = self.values[i];
          src.grad[i] += self.grad[i] * (1.0 - y * y);
        }
        break;
      case UnaryKind::relu:
        for (std::size_t i = 0; i < n; ++i) {
          if (src.values[i] > 0.0) src.grad[i] += self.grad[i];
        }
        break;
      case UnaryKind::ln:
        for (std::size_t i = 0; i < n; ++i) src.grad[i] += self.grad[i] / src.values[i];
        break;
    }
  });
}

Tensor sigmoid(const Tensor& x) { return unary(x, UnaryKind::sigmoid); }
Tensor tanh(const Tensor& x) { return unary(x, UnaryKind::tanh); }
Tensor relu(const Tensor& x) { return unary(x, UnaryKind::relu); }
Tensor ln(const Tensor& x) { return unary(x, UnaryKind::ln); }

Tensor binary(const Tensor& a, const Tensor& b, BinaryKind kind) {
  const char* name = kind == BinaryKind::add        ? "add"
                     : kind == BinaryKind::subtract ? "subtract"
                                                    : "hadamard";
  require_same_shape(a, b, name);
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) {
    switch (kind) {
      case BinaryKind::add: out[i] = av[i] + bv[i]; break;
      case BinaryKind::subtract: out[i] = av[i] - bv[i]; break;
      case BinaryKind::hadamard: out[i] = av[i] * bv[i]; break;
    }
  }
  return make_result(a.shape(), std::move(out), name, {a.node(), b.node()}, [kind](Node& self) {
    Node& lhs = *self.inputs[0];
    Node& rhs = *self.inputs[1];
    const auto n = self.values.size();
    if (lhs.requires_grad) {
      for (std::size_t i = 0; i < n; ++i) {
        lhs.grad[i] += kind == BinaryKind::hadamard ? self.grad[i] * rhs.values[i] : self.grad[i];
      }
    }
    if (rhs.requires_grad) {
      for (std::size_t i = 0; i < n; ++i) {
        switch (kind) {
          case BinaryKind::add: rhs.grad[i] += self.grad[i]; break;
          case BinaryKind::subtract: rhs.grad[i] -= self.grad[i]; break;
          case BinaryKind::hadamard: rhs.grad[i] += self.grad[i] * lhs.values[i]; break;
        }
      }
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) { return binary(a, b, BinaryKind::add); }
Tensor subtract(const Tensor& a, const Tensor& b) { return binary(a, b, BinaryKind::subtract); }
Tensor hadamard(const Tensor& a, const Tensor& b) { return binary(a, b, BinaryKind::hadamard); }

Tensor affine(const Tensor& x, double scale_by, double shift) {
  const auto in = x.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = scale_by * in[i] + shift;
  return make_result(x.shape(), std::move(out), "affine", {x.node()}, [scale_by](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) src.grad[i] += scale_by * self.grad[i];
  });
}

Tensor scale(const Tensor& x, double factor) { return affine(x, factor, 0.0); }

Tensor clamp_min(const Tensor& x, double floor) {
  const auto in = x.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::max(in[i], floor);
  return make_result(x.shape(), std::move(out), "clamp_min", {x.node()}, [floor](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (src.values[i] > floor) src.grad[i] += self.grad[i];
    }
  });
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw DimensionError("matmul: cannot multiply " + shape_to_string(a.shape()) + " by " +
                         shape_to_string(b.shape()));
  }
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = &bv[p * n];
      double* orow = &out[i * n];
      for (std::size_t j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  return make_result({m, n}, std::move(out), "matmul", {a.node(), b.node()},
                     [m, k, n](Node& self) {
                       Node& lhs = *self.inputs[0];
                       Node& rhs = *self.inputs[1];
                       if (lhs.requires_grad) {
                         for (std::size_t i = 0; i < m; ++i) {
                           for (std::size_t p = 0; p < k; ++p) {
                             double acc = 0.0;
                             for (std::size_t j = 0; j < n; ++j) {
                               acc += self.grad[i * n + j] * rhs.values[p * n + j];
                             }
                             lhs.grad[i * k + p] += acc;
                           }
                         }
                       }
                       if (rhs.requires_grad) {
                         for (std::size_t i = 0; i < m; ++i) {
                           for (std::size_t p = 0; p < k; ++p) {
                             const double aip = lhs.values[i * k + p];
                             for (std::size_t j = 0; j < n; ++j) {
                               rhs.grad[p * n + j] += aip * self.grad[i * n + j];
                             }
                           }
                         }
                       }
                     });
}

Tensor matvec(const Tensor& a, const Tensor& x) {
  if (a.rank() != 2 || x.rank() != 1 || a.dim(1) != x.dim(0)) {
    throw DimensionError("matvec: cannot multiply " + shape_to_string(a.shape()) + " by " +
                         shape_to_string(x.shape()));
  }
  const std::size_t m = a.dim(0), k = a.dim(1);
  const auto av = a.values();
  const auto xv = x.values();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = &av[i * k];
    double acc = 0.0;
    for (std::size_t p = 0; p < k; ++p) acc += arow[p] * xv[p];
    out[i] = acc;
  }
  return make_result({m}, std::move(out), "matvec", {a.node(), x.node()}, [m, k](Node& self) {
    Node& mat = *self.inputs[0];
    Node& vec = *self.inputs[1];
    if (mat.requires_grad) {
      for (std::size_t i = 0; i < m; ++i) {
        const double g = self.grad[i];
        if (g == 0.0) continue;
        double* grow = &mat.grad[i * k];
        for (std::size_t p = 0; p < k; ++p) grow[p] += g * vec.values[p];
      }
    }
    if (vec.requires_grad) {
      for (std::size_t i = 0; i < m; ++i) {
        const double g = self.grad[i];
        if (g == 0.0) continue;
        const double* arow = &mat.values[i * k];
        for (std::size_t p = 0; p < k; ++p) vec.grad[p] += g * arow[p];
      }
    }
  });
}

Tensor softmax(const Tensor& x) {
  require_rank(x, 1, "softmax");
  const auto in = x.values();
  const double top = *std::max_element(in.begin(), in.end());
  std::vector<double> out(in.size());
  double total = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = std::exp(in[i] - top);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return make_result(x.shape(), std::move(out), "softmax", {x.node()}, [](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    double dot = 0.0;
    for (std::size_t i = 0; i < self.values.size(); ++i) dot += self.grad[i] * self.values[i];
    for (std::size_t i = 0; i < self.values.size(); ++i) {
      src.grad[i] += self.values[i] * (self.grad[i] - dot);
    }
  });
}

Tensor concat(std::span<const Tensor> parts, std::size_t axis) {
  if (parts.empty()) throw DimensionError("concat of zero parts");
  const Shape& first = parts[0].shape();
  if (axis >= first.size()) {
    throw DimensionError("concat axis " + std::to_string(axis) + " out of range for shape " +
                         shape_to_string(first));
  }
  Shape out_shape = first;
  out_shape[axis] = 0;
  std::vector<std::size_t> extents;
  std::vector<NodePtr> inputs;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const Shape& s = parts[p].shape();
    bool ok = s.size() == first.size();
    for (std::size_t i = 0; ok && i < s.size(); ++i) {
      if (i != axis && s[i] != first[i]) ok = false;
    }
    if (!ok) {
      throw DimensionError("concat: part " + std::to_string(p) + " has shape " +
                           shape_to_string(s) + ", incompatible with part 0 shape " +
                           shape_to_string(first) + " along axis " + std::to_string(axis));
    }
    extents.push_back(s[axis]);
    out_shape[axis] += s[axis];
    inputs.push_back(parts[p].node());
  }
  const auto split = split_axis(out_shape, axis);
  std::vector<double> out;
  out.reserve(shape_size(out_shape));
  for (std::size_t o = 0; o < split.outer; ++o) {
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto v = parts[p].values();
      const std::size_t block = extents[p] * split.inner;
      out.insert(out.end(), v.begin() + o * block, v.begin() + (o + 1) * block);
    }
  }
  return make_result(out_shape, std::move(out), "concat", std::move(inputs),
                     [split, extents](Node& self) {
                       std::size_t offset = 0;
                       for (std::size_t o = 0; o < split.outer; ++o) {
                         for (std::size_t p = 0; p < extents.size(); ++p) {
                           const std::size_t block = extents[p] * split.inner;
                           Node& part = *self.inputs[p];
                           if (part.requires_grad) {
                             for (std::size_t i = 0; i < block; ++i) {
                               part.grad[o * block + i] += self.grad[offset + i];
                             }
                           }
                           offset += block;
                         }
                       }
                     });
}

Tensor concat(std::initializer_list<Tensor> parts, std::size_t axis) {
  return concat(std::span<const Tensor>(parts.begin(), parts.size()), axis);
}

Tensor slice(const Tensor& x, std::size_t axis, std::size_t begin, std::size_t end) {
  const Shape& s = x.shape();
  if (axis >= s.size() || begin >= end || end > s[axis]) {
    throw DimensionError("slice [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") on axis " + std::to_string(axis) + " invalid for shape " +
                         shape_to_string(s));
  }
  const auto split = split_axis(s, axis);
  Shape out_shape = s;
  out_shape[axis] = end - begin;
  const std::size_t block = (end - begin) * split.inner;
  const std::size_t src_block = split.extent * split.inner;
  const std::size_t skip = begin * split.inner;
  const auto v = x.values();
  std::vector<double> out;
  out.reserve(split.outer * block);
  for (std::size_t o = 0; o < split.outer; ++o) {
    const auto start = v.begin() + o * src_block + skip;
    out.insert(out.end(), start, start + block);
  }
  return make_result(out_shape, std::move(out), "slice", {x.node()},
                     [split, block, src_block, skip](Node& self) {
                       Node& src = *self.inputs[0];
                       if (!src.requires_grad) return;
                       for (std::size_t o = 0; o < split.outer; ++o) {
                         for (std::size_t i = 0; i < block; ++i) {
                           src.grad[o * src_block + skip + i] += self.grad[o * block + i];
                         }
                       }
                     });
}

Tensor row(const Tensor& x, std::size_t i) {
  require_rank(x, 2, "row");
  if (i >= x.dim(0)) {
    throw DimensionError("row " + std::to_string(i) + " out of range for " +
                         shape_to_string(x.shape()));
  }
  const std::size_t cols = x.dim(1);
  const auto v = x.values();
  std::vector<double> out(v.begin() + i * cols, v.begin() + (i + 1) * cols);
  return make_result({cols}, std::move(out), "row", {x.node()}, [i, cols](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    for (std::size_t c = 0; c < cols; ++c) src.grad[i * cols + c] += self.grad[c];
  });
}

Tensor stack_rows(std::span<const Tensor> rows) {
  if (rows.empty()) throw DimensionError("stack_rows of zero rows");
  const std::size_t cols = rows[0].size();
  std::vector<NodePtr> inputs;
  std::vector<double> out;
  out.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rank() != 1 || rows[r].size() != cols) {
      throw DimensionError("stack_rows: row " + std::to_string(r) + " has shape " +
                           shape_to_string(rows[r].shape()) + ", expected [" +
                           std::to_string(cols) + "]");
    }
    const auto v = rows[r].values();
    out.insert(out.end(), v.begin(), v.end());
    inputs.push_back(rows[r].node());
  }
  return make_result({rows.size(), cols}, std::move(out), "stack_rows", std::move(inputs),
                     [cols](Node& self) {
                       for (std::size_t r = 0; r < self.inputs.size(); ++r) {
                         Node& src = *self.inputs[r];
                         if (!src.requires_grad) continue;
                         for (std::size_t c = 0; c < cols; ++c) {
                           src.grad[c] += self.grad[r * cols + c];
                         }
                       }
                     });
}

Tensor reshape(const Tensor& x, Shape shape) {
  if (shape_size(shape) != x.size()) {
    throw DimensionError("reshape " + shape_to_string(x.shape()) + " to " +
                         shape_to_string(shape) + " changes the element count");
  }
  const auto v = x.values();
  return make_result(std::move(shape), std::vector<double>(v.begin(), v.end()), "reshape",
                     {x.node()}, [](Node& self) {
                       Node& src = *self.inputs[0];
                       if (!src.requires_grad) return;
                       for (std::size_t i = 0; i < self.grad.size(); ++i) {
                         src.grad[i] += self.grad[i];
                       }
                     });
}

Tensor flatten(const Tensor& x) { return reshape(x, {x.size()}); }

Tensor sum(const Tensor& x) {
  double total = 0.0;
  for (double v : x.values()) total += v;
  return make_result({1}, {total}, "sum", {x.node()}, [](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    for (auto& g : src.grad) g += self.grad[0];
  });
}

Tensor select(const Tensor& x, std::size_t i) {
  if (i >= x.size()) {
    throw DimensionError("select index " + std::to_string(i) + " out of range for " +
                         shape_to_string(x.shape()));
  }
  return make_result({1}, {x.values()[i]}, "select", {x.node()}, [i](Node& self) {
    Node& src = *self.inputs[0];
    if (src.requires_grad) src.grad[i] += self.grad[0];
  });
}

Tensor gather_rows(const Tensor& table, std::span<const std::size_t> ids,
                   std::optional<std::size_t> pinned_row) {
  require_rank(table, 2, "gather_rows");
  if (ids.empty()) throw InputError("gather_rows with no indices");
  const std::size_t rows = table.dim(0), cols = table.dim(1);
  const auto v = table.values();
  std::vector<double> out;
  out.reserve(ids.size() * cols);
  for (auto id : ids) {
    if (id >= rows) {
      throw InputError("index " + std::to_string(id) + " out of range for table with " +
                       std::to_string(rows) + " rows");
    }
    if (pinned_row && id == *pinned_row) {
      out.insert(out.end(), cols, 0.0);
    } else {
      out.insert(out.end(), v.begin() + id * cols, v.begin() + (id + 1) * cols);
    }
  }
  std::vector<std::size_t> kept(ids.begin(), ids.end());
  return make_result({ids.size(), cols}, std::move(out), "gather_rows", {table.node()},
                     [kept = std::move(kept), cols, pinned_row](Node& self) {
                       Node& src = *self.inputs[0];
                       if (!src.requires_grad) return;
                       for (std::size_t r = 0; r < kept.size(); ++r) {
                         if (pinned_row && kept[r] == *pinned_row) continue;
                         for (std::size_t c = 0; c < cols; ++c) {
                           src.grad[kept[r] * cols + c] += self.grad[r * cols + c];
                         }
                       }
                     });
}

Tensor conv_rows(const Tensor& input, const Tensor& filters, const Tensor& bias) {
  require_rank(input, 2, "conv_rows");
  require_rank(filters, 3, "conv_rows filters");
  require_rank(bias, 1, "conv_rows bias");
  const std::size_t n = input.dim(0), k = input.dim(1);
  const std::size_t f = filters.dim(0), d = filters.dim(1);
  if (filters.dim(2) != k || bias.dim(0) != f) {
    throw DimensionError("conv_rows: filters " + shape_to_string(filters.shape()) + " and bias " +
                         shape_to_string(bias.shape()) + " do not fit input " +
                         shape_to_string(input.shape()));
  }
  if (d > n) {
    throw DimensionError("conv_rows: filter height " + std::to_string(d) +
                         " exceeds sequence length " + std::to_string(n));
  }
  const std::size_t out_rows = n - d + 1;
  const std::size_t window = d * k;
  const auto e = input.values();
  const auto w = filters.values();
  const auto b = bias.values();
  std::vector<double> out(out_rows * f);
  for (std::size_t i = 0; i < out_rows; ++i) {
    // Window rows i..i+d-1 are contiguous in row-major storage.
    const double* x = &e[i * k];
    for (std::size_t j = 0; j < f; ++j) {
      const double* wj = &w[j * window];
      double acc = b[j];
      for (std::size_t t = 0; t < window; ++t) acc += wj[t] * x[t];
      out[i * f + j] = acc;
    }
  }
  return make_result({out_rows, f}, std::move(out), "conv_rows",
                     {input.node(), filters.node(), bias.node()},
                     [out_rows, f, k, window](Node& self) {
                       Node& in = *self.inputs[0];
                       Node& flt = *self.inputs[1];
                       Node& bs = *self.inputs[2];
                       for (std::size_t i = 0; i < out_rows; ++i) {
                         for (std::size_t j = 0; j < f; ++j) {
                           const double g = self.grad[i * f + j];
                           if (g == 0.0) continue;
                           if (bs.requires_grad) bs.grad[j] += g;
                           if (flt.requires_grad) {
                             for (std::size_t t = 0; t < window; ++t) {
                               flt.grad[j * window + t] += g * in.values[i * k + t];
                             }
                           }
                           if (in.requires_grad) {
                             for (std::size_t t = 0; t < window; ++t) {
                               in.grad[i * k + t] += g * flt.values[j * window + t];
                             }
                           }
                         }
                       }
                     });
}

Tensor pad_rows(const Tensor& x, std::size_t rows) {
  require_rank(x, 2, "pad_rows");
  if (rows < x.dim(0)) {
    throw DimensionError("pad_rows: target " + std::to_string(rows) + " rows is less than " +
                         std::to_string(x.dim(0)));
  }
  const std::size_t cols = x.dim(1);
  const auto v = x.values();
  std::vector<double> out(rows * cols, 0.0);
  std::copy(v.begin(), v.end(), out.begin());
  const std::size_t kept = v.size();
  return make_result({rows, cols}, std::move(out), "pad_rows", {x.node()}, [kept](Node& self) {
    Node& src = *self.inputs[0];
    if (!src.requires_grad) return;
    for (std::size_t i = 0; i < kept; ++i) src.grad[i] += self.grad[i];
  });
}

Tensor max_pool_rows(const Tensor& x, std::size_t q) {
  require_rank(x, 2, "max_pool_rows");
  const std::size_t n = x.dim(0), cols = x.dim(1);
  if (q == 0 || n % q != 0) {
    throw DimensionError("max_pool_rows: window " + std::to_string(q) +
                         " does not divide row count " + std::to_string(n));
  }
  const std::size_t p = n / q;
  const auto v = x.values();
  std::vector<double> out(p * cols);
  std::vector<std::size_t> winners(p * cols);
  for (std::size_t b = 0; b < p; ++b) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t best = b * q * cols + c;
      for (std::size_t r = 1; r < q; ++r) {
        const std::size_t idx = (b * q + r) * cols + c;
        if (v[idx] > v[best]) best = idx;
      }
      out[b * cols + c] = v[best];
      winners[b * cols + c] = best;
    }
  }
  return make_result({p, cols}, std::move(out), "max_pool_rows", {x.node()},
                     [winners = std::move(winners)](Node& self) {
                       Node& src = *self.inputs[0];
                       if (!src.requires_grad) return;
                       for (std::size_t i = 0; i < winners.size(); ++i) {
                         src.grad[winners[i]] += self.grad[i];
                       }
                     });
}

}  // namespace saint
