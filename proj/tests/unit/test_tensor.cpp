#include <doctest.h>

#include <cmath>
#include <random>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"
#include "saint/tensor/sgd.hpp"
#include "saint/tensor/tape.hpp"
#include "saint/tensor/tensor.hpp"
#include "support/gradcheck.hpp"

using namespace saint;
using saint::testing::grad_check;
using saint::testing::project;
using saint::testing::random_tensor;

namespace {

std::vector<double> vals(const Tensor& t) { return {t.values().begin(), t.values().end()}; }

constexpr double kGradTol = 1e-4;

}  // namespace

TEST_CASE("tensor construction and invariants") {
  auto t = Tensor::zeros({2, 3}, true);
  CHECK(t.size() == 6);
  CHECK(t.grad().size() == 6);
  CHECK(t.is_leaf());
  CHECK_THROWS_AS(Tensor::zeros({}), DimensionError);
  CHECK_THROWS_AS(Tensor::zeros({2, 0}), DimensionError);
  CHECK_THROWS_AS(Tensor::from_values({2, 2}, {1, 2, 3}), DimensionError);
  t.mutable_grad()[0] = 5.0;
  t.zero_grad();
  for (double g : t.grad()) CHECK(g == 0.0);
  auto d = t.detach();
  CHECK_FALSE(d.requires_grad());
  d.mutable_values()[0] = 1.0;
  CHECK(t.at(0) == 0.0);
}

TEST_CASE("matmul") {
  auto eye = Tensor::from_values({2, 2}, {1, 0, 0, 1});
  auto m = Tensor::from_values({2, 2}, {1, 2, 3, 4});
  CHECK(vals(matmul(eye, m)) == std::vector<double>{1, 2, 3, 4});
  auto proj = Tensor::from_values({2, 2}, {1, 0, 0, 0});
  auto col = Tensor::from_values({2, 1}, {5, 7});
  CHECK(vals(matmul(proj, col)) == std::vector<double>{5, 0});

  auto bad = Tensor::zeros({3, 2});
  try {
    matmul(m, bad);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[2x2]") != std::string::npos);
    CHECK(msg.find("[3x2]") != std::string::npos);
  }

  std::mt19937_64 rng(1);
  auto a = random_tensor({3, 4}, rng);
  auto b = random_tensor({4, 2}, rng);
  auto r = grad_check([&] { return sum(matmul(a, b)); }, {a, b});
  CHECK(r.max_error < 1e-6);
}

TEST_CASE("elementwise unary") {
  CHECK(sigmoid(Tensor::scalar(0.0)).item() == 0.5);
  CHECK(tanh(Tensor::scalar(0.0)).item() == 0.0);
  CHECK(relu(Tensor::from_values({2}, {-1, 2})).at(0) == 0.0);
  CHECK(std::abs(ln(Tensor::scalar(0.3)).item() + 1.2040) < 1e-4);
  try {
    ln(Tensor::from_values({3}, {1.0, 0.5, 0.0}));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  std::mt19937_64 rng(2);
  auto x = random_tensor({5}, rng);
  for (auto kind : {UnaryKind::sigmoid, UnaryKind::tanh}) {
    CHECK(grad_check([&] { return project(unary(x, kind)); }, {x}).max_error < kGradTol);
  }
  // relu and ln away from their kink / pole
  auto pos = random_tensor({5}, rng, 0.2, 2.0);
  CHECK(grad_check([&] { return project(relu(pos)); }, {pos}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(ln(pos)); }, {pos}).max_error < kGradTol);
  auto neg = random_tensor({5}, rng, -2.0, -0.2);
  CHECK(grad_check([&] { return project(relu(affine(neg, 1.0, 0.0))); }, {neg}).max_error == 0.0);
}

TEST_CASE("elementwise binary") {
  auto a = Tensor::from_values({3}, {1, 2, 3});
  CHECK(vals(hadamard(a, Tensor::zeros({3}))) == std::vector<double>{0, 0, 0});
  CHECK(vals(add(a, Tensor::zeros({3}))) == vals(a));
  CHECK_THROWS_AS(add(a, Tensor::zeros({4})), DimensionError);
  CHECK_THROWS_AS(add(a, Tensor::zeros({3, 1})), DimensionError);

  std::mt19937_64 rng(3);
  auto x = random_tensor({4}, rng);
  auto y = random_tensor({4}, rng);
  for (auto kind : {BinaryKind::add, BinaryKind::subtract, BinaryKind::hadamard}) {
    CHECK(grad_check([&] { return project(binary(x, y, kind)); }, {x, y}).max_error < kGradTol);
  }
  // d/da sum(a ⊙ b) = b
  backward(sum(hadamard(x, y)));
  for (std::size_t i = 0; i < 4; ++i) CHECK(x.grad()[i] == y.at(i));
  x.zero_grad();
  y.zero_grad();

  CHECK(grad_check([&] { return project(affine(x, -1.5, 0.25)); }, {x}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(scale(x, 3.0)); }, {x}).max_error < kGradTol);
}

TEST_CASE("softmax") {
  auto u = softmax(Tensor::zeros({3}));
  for (double v : u.values()) CHECK(v == doctest::Approx(1.0 / 3.0));
  auto big = softmax(Tensor::from_values({3}, {1000, 0, 0}));
  CHECK(std::isfinite(big.at(0)));
  CHECK(big.at(0) == doctest::Approx(1.0));
  CHECK(big.at(1) < 1e-300);

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    auto x = random_tensor({len(rng)}, rng, -10, 10, false);
    auto p = softmax(x);
    double total = 0;
    std::size_t arg_x = 0, arg_p = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      total += p.at(i);
      CHECK(p.at(i) > 0.0);
      if (x.at(i) > x.at(arg_x)) arg_x = i;
      if (p.at(i) > p.at(arg_p)) arg_p = i;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(arg_x == arg_p);
  }
  auto x = random_tensor({5}, rng);
  CHECK(grad_check([&] { return project(softmax(x)); }, {x}).max_error < kGradTol);
}

TEST_CASE("concat and slice") {
  auto a = Tensor::zeros({320});
  auto b = Tensor::filled({100}, 1.0);
  CHECK(concat({a, b}, 0).shape() == Shape{420});
  CHECK(vals(concat({b}, 0)) == vals(b));

  try {
    concat({Tensor::zeros({2, 3}), Tensor::zeros({2, 3}), Tensor::zeros({3, 3})}, 1);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> d(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = d(rng);
    std::vector<Tensor> parts;
    for (int k = 0; k < 3; ++k) parts.push_back(random_tensor({rows, d(rng)}, rng, -2, 2, false));
    auto joined = concat(parts, 1);
    std::size_t offset = 0;
    for (const auto& p : parts) {
      CHECK(vals(slice(joined, 1, offset, offset + p.dim(1))) == vals(p));
      offset += p.dim(1);
    }
    auto stacked = concat(parts[0].dim(1) == parts[1].dim(1) ? std::vector<Tensor>{parts[0], parts[1]}
                                                             : std::vector<Tensor>{parts[0]},
                          0);
    CHECK(vals(slice(stacked, 0, 0, rows)) == vals(parts[0]));
  }

  auto x = random_tensor({2, 3}, rng);
  auto y = random_tensor({2, 2}, rng);
  CHECK(grad_check([&] { return project(concat({x, y}, 1)); }, {x, y}).max_error < kGradTol);
  auto z = random_tensor({1, 3}, rng);
  CHECK(grad_check([&] { return project(concat({x, z}, 0)); }, {x, z}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(slice(x, 1, 1, 3)); }, {x}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(row(x, 1)); }, {x}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(select(flatten(x), 4)); }, {x}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(reshape(x, {3, 2})); }, {x}).max_error < kGradTol);
  auto r0 = random_tensor({3}, rng);
  auto r1 = random_tensor({3}, rng);
  std::vector<Tensor> rows{r0, r1};
  CHECK(grad_check([&] { return project(stack_rows(rows)); }, {r0, r1}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(pad_rows(x, 4)); }, {x}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(clamp_min(x, -0.5)); }, {x}).max_error < kGradTol);
}

TEST_CASE("gather, conv and pooling gradients") {
  std::mt19937_64 rng(6);
  auto table = random_tensor({5, 3}, rng);
  std::vector<std::size_t> ids{4, 0, 2, 4};
  CHECK(grad_check([&] { return project(gather_rows(table, ids)); }, {table}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(gather_rows(table, ids, 0)); }, {table}).max_error < kGradTol);
  CHECK_THROWS_AS(gather_rows(table, std::vector<std::size_t>{5}), InputError);

  auto e = random_tensor({6, 4}, rng);
  auto filters = random_tensor({3, 2, 4}, rng);
  auto bias = random_tensor({3}, rng);
  CHECK(grad_check([&] { return project(conv_rows(e, filters, bias)); }, {e, filters, bias})
            .max_error < kGradTol);
  auto m = random_tensor({6, 3}, rng);
  CHECK(grad_check([&] { return project(max_pool_rows(m, 2)); }, {m}).max_error < kGradTol);
  CHECK(grad_check([&] { return project(max_pool_rows(m, 3)); }, {m}).max_error < kGradTol);
}

TEST_CASE("backward semantics") {
  auto x = Tensor::from_values({3}, {1, 2, 3}, true);
  backward(sum(x));
  CHECK(vals(Tensor::from_values({3}, {x.grad().begin(), x.grad().end()})) ==
        std::vector<double>{1, 1, 1});
  x.zero_grad();

  auto z = Tensor::zeros({4}, true);
  backward(sum(sigmoid(z)));
  for (double g : z.grad()) CHECK(g == 0.25);

  // non-scalar loss is rejected
  CHECK_THROWS_AS(backward(add(x, x)), ContractError);

  // accumulation across calls
  x.zero_grad();
  backward(sum(x));
  backward(sum(x));
  for (double g : x.grad()) CHECK(g == 2.0);

  // a tensor used by two consumers receives the sum of both paths
  x.zero_grad();
  auto y = sigmoid(x);
  backward(sum(add(hadamard(y, y), scale(y, 3.0))));
  for (std::size_t i = 0; i < 3; ++i) {
    const double s = 1.0 / (1.0 + std::exp(-x.at(i)));
    CHECK(x.grad()[i] == doctest::Approx((2 * s + 3) * s * (1 - s)).epsilon(1e-12));
  }

  // zero_grad + backward is idempotent in outcome
  x.zero_grad();
  auto loss = sum(hadamard(tanh(x), x));
  backward(loss);
  std::vector<double> first(x.grad().begin(), x.grad().end());
  x.zero_grad();
  backward(loss);
  CHECK(std::vector<double>(x.grad().begin(), x.grad().end()) == first);
}

TEST_CASE("tape ordering") {
  auto a = Tensor::from_values({2}, {1, 2}, true);
  auto b = Tensor::from_values({2}, {3, 4}, true);
  auto c = hadamard(add(a, b), a);
  auto loss = sum(c);
  auto tape = ComputationTape::record(loss);
  const auto entries = tape.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& input : entries[i]->inputs) {
      bool earlier = false;
      for (std::size_t j = 0; j < i; ++j) earlier |= entries[j] == input.get();
      CHECK(earlier);
    }
  }
  CHECK(tape.operation_count() == 3);
  CHECK(tape.run_backward() == 3);
}

TEST_CASE("sgd") {
  auto p = Tensor::from_values({1}, {1.0}, true);
  p.mutable_grad()[0] = 2.0;
  std::vector<Tensor> params{p};
  sgd_step(params, 0.1);
  CHECK(p.at(0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(sgd_step(params, 0.0), ConfigError);
  CHECK_THROWS_AS(sgd_step(params, -1.0), ConfigError);

  p.mutable_values()[0] = 1.0;
  for (int i = 0; i < 100; ++i) {
    zero_grad(params);
    backward(sum(hadamard(p, p)));
    sgd_step(params, 0.1);
  }
  CHECK(std::abs(p.at(0)) < 1e-9);
  CHECK(std::abs(p.at(0) - std::pow(0.8, 100)) < 1e-15);

  auto frozen = Tensor::from_values({2}, {1, 2}, false);
  const auto before = checksum(frozen);
  std::vector<Tensor> mixed{frozen, p};
  sgd_step(mixed, 0.5);
  CHECK(checksum(frozen) == before);
}
