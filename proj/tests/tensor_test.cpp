#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "perron/errors.hpp"
#include "perron/fixtures.hpp"
#include "perron/spectral.hpp"
#include "perron/tensor.hpp"

using namespace perron;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(TensorShape, SizeAndValidation) {
  EXPECT_EQ(TensorShape(3, 4).size(), 64u);
  EXPECT_EQ(TensorShape(2, 1).size(), 1u);
  EXPECT_THROW(TensorShape(1, 3), ShapeError);
  EXPECT_THROW(TensorShape(3, 0), ShapeError);
  EXPECT_THROW(TensorShape(40, 10), ShapeError);
}

TEST(TensorShape, OffsetIsFirstIndexSlowest) {
  TensorShape s(3, 3);
  const int idx[] = {1, 0, 2};
  EXPECT_EQ(s.offset(idx), 1u * 9 + 0 * 3 + 2);
  int back[3];
  s.unravel(11, back);
  EXPECT_EQ(back[0], 1);
  EXPECT_EQ(back[1], 0);
  EXPECT_EQ(back[2], 2);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(s.is_diagonal(s.diagonal_offset(i)));
  EXPECT_FALSE(s.is_diagonal(1));
}

TEST(DenseTensor, RejectsBadInput) {
  EXPECT_THROW(DenseTensor(TensorShape(2, 2), {1, 2, 3}), ShapeError);
  EXPECT_THROW(DenseTensor(TensorShape(2, 1), {NAN}), ArgumentError);
  EXPECT_THROW(PositiveVector({1.0, 0.0}), ArgumentError);
}

TEST(Contract, UnitTensorRaisesToPower) {
  const auto y = contract(unit_tensor(3, 3), std::vector<double>{2, 3, 4});
  EXPECT_EQ(y, (std::vector<double>{4, 9, 16}));
}

TEST(Contract, Example2AtOnes) {
  const auto y = contract(fixtures::example2(), std::vector<double>{1, 1, 1});
  EXPECT_EQ(y, (std::vector<double>{0, 0, 2}));
}

TEST(Contract, DimensionMismatch) {
  EXPECT_THROW(contract(unit_tensor(3, 3), std::vector<double>{1, 2}), ShapeError);
}

TEST(Contract, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(11);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 5; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        const auto a = oracle::uniform_tensor(m, n, rng);
        const auto x = oracle::uniform_vector(n, rng, -2.0, 2.0);
        const auto got = contract(a, x);
        const auto want = oracle::naive_contract(a, x);
        // Relative to the sum of absolute terms, which bounds cancellation.
        std::vector<double> ax(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) ax[i] = std::abs(x[i]);
        std::vector<double> av(a.values().begin(), a.values().end());
        for (double& v : av) v = std::abs(v);
        const auto bound = oracle::naive_contract(DenseTensor(a.shape(), av), ax);
        for (std::size_t i = 0; i < got.size(); ++i) {
          EXPECT_LE(std::abs(got[i] - want[i]), 1e-12 * std::max(1.0, bound[i]))
              << "m=" << m << " n=" << n;
        }
      }
    }
  }
}

TEST(Contract, Homogeneous) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + rep % 3;
    const int n = 1 + rep % 5;
    const auto a = oracle::uniform_tensor(m, n, rng, 0.0, 1.0);
    const auto x = oracle::uniform_vector(n, rng, 0.1, 1.0);
    const double c = 0.5 + rep * 0.25;
    std::vector<double> cx(x);
    for (double& v : cx) v *= c;
    auto want = contract(a, x);
    for (double& v : want) v *= std::pow(c, m - 1);
    EXPECT_LE(oracle::max_rel_diff(contract(a, cx), want), 1e-12);
  }
}

TEST(Contract, ShiftAddsScaledPower) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + rep % 3;
    const int n = 1 + rep % 4;
    const auto a = oracle::uniform_tensor(m, n, rng);
    const auto x = oracle::uniform_vector(n, rng, 0.1, 2.0);
    const double b = -3.0 + rep * 0.7;
    auto want = contract(a, x);
    const auto p = elementwise_power(x, m - 1);
    for (std::size_t i = 0; i < want.size(); ++i) want[i] += b * p[i];
    EXPECT_LE(oracle::max_rel_diff(contract(shift(a, b), x), want), 1e-12);
  }
}

TEST(Contract, PermutationEquivariant) {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 3 + rep % 2;
    const int n = 4;
    const auto a = oracle::uniform_tensor(m, n, rng);
    const auto x = oracle::uniform_vector(n, rng, 0.1, 2.0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> px(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) px[static_cast<std::size_t>(perm[i])] = x[static_cast<std::size_t>(i)];
    const auto y = contract(a, x);
    const auto py = contract(relabel(a, perm), px);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(py[static_cast<std::size_t>(perm[i])], y[static_cast<std::size_t>(i)],
                  1e-12 * std::max(1.0, std::abs(y[static_cast<std::size_t>(i)])));
    }
  }
}

TEST(ElementwisePower, Examples) {
  EXPECT_EQ(elementwise_power(std::vector<double>{4, 9, 16}, 0.5), (std::vector<double>{2, 3, 4}));
  for (double p : {-2.0, 0.0, 0.3, 1.0, 7.5}) {
    EXPECT_EQ(elementwise_power(std::vector<double>{1, 1, 1}, p), (std::vector<double>{1, 1, 1}));
  }
  EXPECT_EQ(elementwise_power(std::vector<double>{0.5, 0.5, 1}, 2),
            (std::vector<double>{0.25, 0.25, 1}));
  EXPECT_EQ(elementwise_power(std::vector<double>{-2, 3}, 3), (std::vector<double>{-8, 27}));
  EXPECT_THROW(elementwise_power(std::vector<double>{-1, 1}, 0.5), DomainError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(DenseTensor::zeros(TensorShape(3, 3)), 1.0), unit_tensor(3, 3));
  const auto s = shift(fixtures::example2(), 2.0);
  EXPECT_EQ(s.diagonal(0), 1.0);
  EXPECT_EQ(s.diagonal(1), 1.0);
  EXPECT_EQ(s.diagonal(2), 2.0);
  // Off-diagonal entries untouched.
  EXPECT_EQ(s.at({0, 2, 2}), 1.0);
  EXPECT_EQ(shift(shift(fixtures::example2(), 2.0), -2.0), fixtures::example2());
}

TEST(Perturb, Examples) {
  const auto a = fixtures::example1();
  EXPECT_EQ(perturb(a, 0.0), a);
  const auto ones = perturb(DenseTensor::zeros(TensorShape(3, 2)), 1.0);
  for (double v : ones.values()) EXPECT_EQ(v, 1.0);
  const auto p = perturb(unit_tensor(3, 3), 1e-9);
  EXPECT_GE(*std::min_element(p.values().begin(), p.values().end()), 1e-9);
  EXPECT_THROW(perturb(a, -1e-3), ArgumentError);
}

TEST(Predicates, EssentialNonnegativity) {
  EXPECT_TRUE(is_essentially_nonnegative(fixtures::example1()));
  TensorShape shape(3, 2);
  std::vector<double> v(shape.size(), 0.0);
  const int idx[] = {0, 1, 1};
  v[shape.offset(idx)] = -0.1;
  const DenseTensor bad(shape, v);
  EXPECT_FALSE(is_essentially_nonnegative(bad));
  try {
    require_essentially_nonnegative(bad);
    FAIL();
  } catch (const SignError& e) {
    EXPECT_EQ(e.index(), (std::vector<int>{1, 2, 2}));
  }
  EXPECT_TRUE(is_essentially_nonnegative(
      DiagonalTensor(TensorShape(4, 3), {-5.0, 2.0, -0.5}).to_dense()));
}

TEST(Predicates, NonnegativeAndSymmetric) {
  const auto unit = unit_tensor(3, 3);
  EXPECT_TRUE(is_nonnegative(unit));
  EXPECT_TRUE(is_symmetric(unit));
  EXPECT_FALSE(is_nonnegative(fixtures::example1()));
  EXPECT_EQ(fixtures::example1().at({0, 0, 0}), -1.51);

  TensorShape shape(3, 3);
  std::vector<double> v(shape.size(), 0.0);
  const int i123[] = {0, 1, 2};
  v[shape.offset(i123)] = 1.0;
  EXPECT_FALSE(is_symmetric(DenseTensor(shape, v)));
  // Filling every permutation restores symmetry.
  const int perms[][3] = {{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) v[shape.offset(p)] = 1.0;
  EXPECT_TRUE(is_symmetric(DenseTensor(shape, v)));
}

TEST(DiagonalScaling, IdentityIsBitExact) {
  std::mt19937_64 rng(21);
  const auto a = oracle::uniform_tensor(3, 4, rng, 0.0, 1.0);
  const auto b = apply_diagonal_scaling(a, 1.0, PositiveVector::ones(4));
  EXPECT_EQ(vec(b.values()), vec(a.values()));
}

TEST(DiagonalScaling, UnitTensorScalesBySigma) {
  const auto b = apply_diagonal_scaling(unit_tensor(3, 3), 2.5, PositiveVector({0.3, 4.0, 1.7}));
  EXPECT_EQ(b, scale(unit_tensor(3, 3), 2.5));
}

TEST(DiagonalScaling, FormulaAndZeroPattern) {
  std::mt19937_64 rng(22);
  TensorShape shape(3, 3);
  std::vector<double> v(shape.size());
  std::bernoulli_distribution coin(0.5);
  for (double& x : v) x = coin(rng) ? 0.0 : 1.0 + x;
  const DenseTensor a(shape, v);
  const PositiveVector d({0.5, 2.0, 3.0});
  const auto b = apply_diagonal_scaling(a, 1.5, d);
  EXPECT_TRUE(same_zero_pattern(a, b));
  // B_{123} = 1.5 * A_{123} * d1^{-2} d2 d3
  EXPECT_NEAR(b.at({0, 1, 2}), 1.5 * a.at({0, 1, 2}) * 6.0 / 0.25, 1e-12);
  EXPECT_THROW(apply_diagonal_scaling(a, 0.0, d), ArgumentError);
  EXPECT_THROW(apply_diagonal_scaling(a, -1.0, d), ArgumentError);
  EXPECT_THROW(apply_diagonal_scaling(a, 1.0, PositiveVector({1.0, 1.0})), ShapeError);
}

TEST(DiagonalScaling, ScalesSpectralRadius) {
  std::mt19937_64 rng(23);
  const auto a = oracle::uniform_tensor(3, 3, rng, 0.1, 1.0);
  const PositiveVector d({0.7, 1.3, 2.1});
  const double rho = spectral_radius(a);
  const double rho_b = spectral_radius(apply_diagonal_scaling(a, 3.0, d));
  EXPECT_NEAR(rho_b, 3.0 * rho, 1e-7 * rho);
}

TEST(Predicates, SignErrorMessageNamesIndex) {
  TensorShape shape(3, 2);
  std::vector<double> v(shape.size(), 0.0);
  const int idx[] = {1, 0, 1};
  v[shape.offset(idx)] = -1.0;
  try {
    require_nonnegative(DenseTensor(shape, v));
    FAIL();
  } catch (const SignError& e) {
    EXPECT_NE(std::string(e.what()).find("(2,1,2)"), std::string::npos) << e.what();
  }
}
