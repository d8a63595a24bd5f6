#include <gtest/gtest.h>

#include <random>

#include "satotate/weight_lattice.hpp"

using namespace satotate;

TEST(DominantWeight, RejectsMalformedPartitions) {
  EXPECT_THROW(DominantWeight({1, 2, 0}), Error);
  EXPECT_THROW(DominantWeight({2, 1, 1}), Error);
  EXPECT_THROW(DominantWeight({0}), Error);
  EXPECT_NO_THROW(DominantWeight({3, 1, 0}));
}

TEST(DominantWeight, FundamentalWeights) {
  EXPECT_EQ(DominantWeight::fundamental(3, 1), DominantWeight({1, 0, 0}));
  EXPECT_EQ(DominantWeight::fundamental(3, 2), DominantWeight({1, 1, 0}));
  EXPECT_EQ(DominantWeight::fundamental(5, 4), DominantWeight({1, 1, 1, 1, 0}));
  EXPECT_TRUE(DominantWeight::zero(4).is_zero());
}

TEST(WeightVector, CanonicalModuloAllOnes) {
  EXPECT_EQ(WeightVector({1, 1, 1}), WeightVector({0, 0, 0}));
  EXPECT_EQ(WeightVector({3, 2, 2}), WeightVector({1, 0, 0}));
  EXPECT_EQ(WeightVector({-1, 0, 2}), WeightVector({0, 1, 3}));
  EXPECT_TRUE(WeightVector({4, 4}).is_zero());
}

TEST(WeightVector, DominantRepresentative) {
  EXPECT_EQ(WeightVector({0, 2, 1}).dominant(), DominantWeight({2, 1, 0}));
  EXPECT_EQ(WeightVector({1, 0, 1}).dominant(), DominantWeight({1, 1, 0}));
  EXPECT_TRUE(is_dominant(WeightVector({2, 1, 0})));
  EXPECT_FALSE(is_dominant(WeightVector({1, 2, 0})));
}

TEST(Aleph, HandComputedValues) {
  EXPECT_EQ(aleph(CoefficientIndex(3, {1, 1})), DominantWeight({2, 1, 0}));
  EXPECT_EQ(aleph(CoefficientIndex(3, {0, 1})), DominantWeight({1, 0, 0}));
  EXPECT_EQ(aleph(CoefficientIndex(3, {1, 0})), DominantWeight({1, 1, 0}));
  EXPECT_EQ(aleph(CoefficientIndex::zero(4)), DominantWeight::zero(4));
  EXPECT_EQ(aleph_inv(DominantWeight({2, 1, 0})), CoefficientIndex(3, {1, 1}));
  EXPECT_EQ(aleph_inv(DominantWeight({1, 0, 0})), CoefficientIndex(3, {0, 1}));
}

TEST(Aleph, RoundTripExhaustive) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> l(static_cast<std::size_t>(n - 1), 0);
    for (;;) {
      const CoefficientIndex idx(n, l);
      const DominantWeight mu = aleph(idx);
      ASSERT_EQ(aleph_inv(mu), idx) << idx.str();
      ASSERT_EQ(aleph(aleph_inv(mu)), mu);
      std::size_t pos = 0;
      while (pos < l.size() && ++l[pos] == 7) l[pos++] = 0;
      if (pos == l.size()) break;
    }
  }
}

TEST(CoefficientIndex, Validation) {
  EXPECT_THROW(CoefficientIndex(3, {1}), Error);
  EXPECT_THROW(CoefficientIndex(3, {-1, 0}), Error);
  EXPECT_EQ(CoefficientIndex::unit(4, 2), CoefficientIndex(4, {0, 1, 0}));
  EXPECT_EQ(CoefficientIndex(4, {1, 2, 3}).total(), 6);
}

TEST(BEntry, Examples) {
  EXPECT_EQ(b_entry(1, 1, 3), 1);
  EXPECT_EQ(b_entry(2, 2, 3), 1);
  EXPECT_EQ(b_entry(1, 2, 3), 2);
  EXPECT_EQ(b_entry(1, 3, 4), 3);
  EXPECT_EQ(b_entry(2, 3, 4), 2);
  EXPECT_THROW(b_entry(0, 1, 3), Error);
  EXPECT_THROW(b_entry(1, 3, 3), Error);
}

TEST(BEntry, Symmetric) {
  for (int n = 2; n <= 7; ++n)
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) EXPECT_EQ(b_entry(i, j, n), b_entry(j, i, n));
}

TEST(Langlands, RankTwo) {
  const Complex v{0.3, 1.7};
  const auto ell = langlands(SpectralParameter(2, {v}));
  ASSERT_EQ(ell.size(), 2u);
  EXPECT_EQ(ell[0], v);
  EXPECT_EQ(ell[1], -v);
}

TEST(Langlands, RankThree) {
  const Complex n1{0.25, 2.0}, n2{-0.5, 3.5};
  const auto ell = langlands(SpectralParameter(3, {n1, n2}));
  EXPECT_EQ(ell[0], 2.0 * n1 + n2);
  EXPECT_EQ(ell[1], n2 - n1);
  EXPECT_EQ(ell[2], -n1 - 2.0 * n2);
}

TEST(Langlands, ZeroNu) {
  for (int n = 2; n <= 6; ++n) {
    for (const Complex& l : langlands(SpectralParameter::zero(n))) EXPECT_EQ(l, Complex{});
  }
}

TEST(Langlands, SumsToZeroExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<Complex> nu(static_cast<std::size_t>(n - 1));
    for (auto& z : nu) z = {u(rng), u(rng)};
    Complex s{};
    for (const Complex& l : langlands(SpectralParameter(n, nu))) s += l;
    ASSERT_EQ(s, Complex{});
  }
}

TEST(LaplaceEigenvalue, Examples) {
  EXPECT_EQ(laplace_eigenvalue(SpectralParameter::zero(3)), Complex(1.0, 0.0));
  EXPECT_EQ(laplace_eigenvalue(SpectralParameter(2, {Complex(0.5, 0.0)})), Complex(0.0, 0.0));
  const double t = 9.25;
  const Complex lam = laplace_eigenvalue(SpectralParameter(2, {Complex(0.0, t)}));
  EXPECT_DOUBLE_EQ(lam.real(), 0.25 + t * t);
  EXPECT_EQ(lam.imag(), 0.0);
}

TEST(SpectralParameter, RejectsWrongLength) {
  EXPECT_THROW(SpectralParameter(3, {Complex{}}), Error);
  EXPECT_THROW(SpectralParameter(1, {}), Error);
}
