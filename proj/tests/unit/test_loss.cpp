#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "saint/errors.hpp"
#include "saint/loss/loss.hpp"
#include "saint/tensor/ops.hpp"
#include "support/gradcheck.hpp"

using namespace saint;

namespace {

Tensor probs(std::vector<double> v, bool grad = false) {
  const std::size_t n = v.size();
  return Tensor::from_values({n}, std::move(v), grad);
}

}  // namespace

TEST_CASE("cross entropy reference values") {
  const auto neg = one_hot_tensor(Sentiment::negative);
  const auto pos = one_hot_tensor(Sentiment::positive);
  CHECK(std::abs(cross_entropy(neg, probs({0.2, 0.3, 0.5})).item() - std::log(1 / 0.3)) < 1e-12);
  CHECK(std::abs(cross_entropy(neg, probs({0.2, 0.3, 0.5})).item() - 1.204) < 1e-3);
  CHECK(std::abs(weighted_cross_entropy(neg, probs({0.2, 0.3, 0.5}), PenaltyMatrix{}).item() -
                 1.806) < 1e-3);
  CHECK(std::abs(cross_entropy(pos, probs({0.2, 0.7, 0.1})).item() - 1.609) < 1e-3);
  CHECK(std::abs(weighted_cross_entropy(pos, probs({0.2, 0.7, 0.1}), PenaltyMatrix{}).item() -
                 4.023) < 1e-3);
  CHECK(std::abs(ln(Tensor::scalar(0.3)).item() + 1.2040) < 1e-4);
  CHECK(cross_entropy(pos, probs({1, 0, 0})).item() == 0.0);
  CHECK(cross_entropy(std::size_t{1}, probs({0.3, 0.5, 0.2})).item() ==
        doctest::Approx(-std::log(0.5)));
}

TEST_CASE("probability floor keeps the loss finite") {
  const auto l = cross_entropy(one_hot_tensor(Sentiment::neutral), probs({0.5, 0.5, 0.0}));
  CHECK(std::isfinite(l.item()));
  CHECK(l.item() == doctest::Approx(-std::log(kProbabilityFloor)));
}

TEST_CASE("contract violations") {
  CHECK_THROWS_AS(cross_entropy(probs({0.5, 0.5, 0}), probs({0.3, 0.5, 0.2})), ContractError);
  CHECK_THROWS_AS(cross_entropy(probs({0, 0, 0}), probs({0.3, 0.5, 0.2})), ContractError);
  CHECK_THROWS_AS(cross_entropy(one_hot_tensor(Sentiment::positive), probs({0.5, 0.5})),
                  ContractError);
  CHECK_THROWS_AS(cross_entropy(one_hot_tensor(Sentiment::positive), probs({0.6, 0.6, 0.1})),
                  ContractError);
}

TEST_CASE("penalty matrix") {
  const PenaltyMatrix p;
  CHECK(p.weight(Sentiment::positive, Sentiment::negative) == 2.5);
  CHECK(p.weight(Sentiment::neutral, Sentiment::positive) == 1.5);
  CHECK(p.weight(Sentiment::positive, Sentiment::neutral) == 2.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(p.weight(i, i) == 1.0);

  PenaltyMatrix::Weights bad_diag{{{2, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
  CHECK_THROWS_AS(PenaltyMatrix{bad_diag}, ConfigError);
  PenaltyMatrix::Weights below_one{{{1, 0.5, 1}, {1, 1, 1}, {1, 1, 1}}};
  CHECK_THROWS_AS(PenaltyMatrix{below_one}, ConfigError);

  // uniform weights reduce to plain cross-entropy
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v{u(rng), u(rng), u(rng)};
    const double s = v[0] + v[1] + v[2];
    for (auto& x : v) x /= s;
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(weighted_cross_entropy(t, probs(v), PenaltyMatrix::uniform()).item() ==
            cross_entropy(t, probs(v)).item());
      // correct predictions are never up-weighted
      const double w = weighted_cross_entropy(t, probs(v), p).item();
      const double plain = cross_entropy(t, probs(v)).item();
      if (argmax(v) == t) CHECK(w == plain);
      else CHECK(w >= plain);
    }
  }

  const auto path = std::filesystem::temp_directory_path() / "saint_penalty_test.txt";
  {
    std::ofstream out(path);
    out << "1 3 2\n2.5 1 2\n1.5 1.5 1\n";
  }
  CHECK(PenaltyMatrix::load(path).weight(0, 1) == 3.0);
  {
    std::ofstream out(path);
    out << "1 3\n";
  }
  CHECK_THROWS_AS(PenaltyMatrix::load(path), FormatError);
  std::filesystem::remove(path);
  CHECK(PenaltyMatrix::load_or_default("").weight(0, 1) == 2.5);
}

TEST_CASE("argmax ties go to the lowest index") {
  std::vector<double> v{0.4, 0.4, 0.2};
  CHECK(argmax(v) == 0);
  std::vector<double> w{0.1, 0.45, 0.45};
  CHECK(argmax(w) == 1);
}

TEST_CASE("loss gradients") {
  std::mt19937_64 rng(8);
  auto logits = testing::random_tensor({3}, rng);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(testing::grad_check([&] { return cross_entropy(t, softmax(logits)); }, {logits})
              .max_error < 1e-4);
    CHECK(testing::grad_check(
              [&] { return weighted_cross_entropy(t, softmax(logits), PenaltyMatrix{}); }, {logits})
              .max_error < 1e-4);
  }
  // weight is constant: gradient is w times the plain gradient
  auto y_hat = probs({0.3, 0.5, 0.2}, true);
  backward(cross_entropy(std::size_t{0}, y_hat));
  const double plain = y_hat.grad()[0];
  y_hat.zero_grad();
  backward(weighted_cross_entropy(std::size_t{0}, y_hat, PenaltyMatrix{}));
  CHECK(y_hat.grad()[0] == doctest::Approx(2.5 * plain).epsilon(1e-14));
  CHECK(y_hat.grad()[1] == 0.0);
}

TEST_CASE("multitask and mean loss") {
  auto a = Tensor::scalar(1.25, true);
  auto b = Tensor::scalar(0.5, true);
  CHECK(multitask_loss(a, b).item() == 1.75);
  std::vector<Tensor> ls{a, b, Tensor::scalar(3.0)};
  CHECK(mean_loss(ls).item() == doctest::Approx(4.75 / 3));
  backward(mean_loss(ls));
  CHECK(a.grad()[0] == doctest::Approx(1.0 / 3));
  std::vector<Tensor> none;
  CHECK_THROWS(mean_loss(none));
}
