#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "satotate/character_algebra.hpp"

using namespace satotate;

namespace {

std::vector<DominantWeight> partitions(int n, int max_first) {
  std::vector<DominantWeight> out;
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int cap) {
    if (i == n - 1) {
      out.emplace_back(parts);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      parts[static_cast<std::size_t>(i)] = v;
      rec(i + 1, v);
    }
  };
  for (int first = 0; first <= max_first; ++first) {
    parts[0] = first;
    rec(1, first);
  }
  return out;
}

std::vector<Complex> random_alphas(int n, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> rad(-spread, spread);
  std::vector<Complex> a(static_cast<std::size_t>(n));
  Complex prod{1.0, 0.0};
  for (int i = 0; i + 1 < n; ++i) {
    a[static_cast<std::size_t>(i)] = std::polar(std::exp(rad(rng)), ang(rng));
    prod *= a[static_cast<std::size_t>(i)];
  }
  a.back() = 1.0 / prod;
  return a;
}

}  // namespace

TEST(WeightTable, FundamentalOrbits) {
  const auto v1 = weight_table(DominantWeight({1, 0, 0}));
  EXPECT_EQ(v1.terms().size(), 3u);
  EXPECT_EQ(v1.mass(), 3);
  const auto v2 = weight_table(DominantWeight({1, 1, 0}));
  EXPECT_EQ(v2.terms().size(), 3u);
  for (const auto& [w, c] : v2.terms()) EXPECT_EQ(c, 1);
}

TEST(WeightTable, Adjoint) {
  const auto adj = weight_table(DominantWeight({2, 1, 0}));
  EXPECT_EQ(adj.terms().size(), 7u);
  EXPECT_EQ(adj.multiplicity(WeightVector({0, 0, 0})), 2);
  EXPECT_EQ(adj.multiplicity(WeightVector({2, 1, 0})), 1);
  EXPECT_EQ(adj.multiplicity(WeightVector({0, 1, 2})), 1);
  EXPECT_EQ(adj.mass(), 8);
}

TEST(WeightTable, MatchesKostkaNumbers) {
  for (int n = 2; n <= 5; ++n) {
    for (const DominantWeight& mu : partitions(n, n <= 3 ? 5 : 3)) {
      const auto table = weight_table(mu);
      std::int64_t mass = 0;
      for (const auto& [w, c] : table.terms()) {
        // lift the canonical weight back to a composition of |mu|
        std::vector<int> comp(w.coords().begin(), w.coords().end());
        int size = 0, boxes = 0;
        for (int v : comp) size += v;
        for (int v : mu.parts()) boxes += v;
        ASSERT_EQ((boxes - size) % n, 0) << mu.str() << " " << w.str();
        for (int& v : comp) v += (boxes - size) / n;
        ASSERT_EQ(c, oracle::kostka({mu.parts().begin(), mu.parts().end()}, comp)) << mu.str() << " " << w.str();
        mass += c;
      }
      EXPECT_EQ(mass, dim(mu)) << mu.str();
    }
  }
}

TEST(WeightTable, BudgetGuard) {
  EXPECT_THROW(weight_table(DominantWeight({9, 6, 3, 1, 0}), TermBudget{1000}), Error);
  try {
    weight_table(DominantWeight({9, 6, 3, 1, 0}), TermBudget{1000});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::budget_exceeded);
  }
}

TEST(Dim, Examples) {
  EXPECT_EQ(dim(DominantWeight({1, 0, 0})), 3);
  EXPECT_EQ(dim(DominantWeight({2, 1, 0})), 8);
  EXPECT_EQ(dim(DominantWeight({3, 0, 0})), 10);
  EXPECT_EQ(dim(DominantWeight({1, 1, 0, 0})), 6);
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(dim(DominantWeight::zero(n)), 1);
}

TEST(Product, IdentityAndRankTwoSquare) {
  const auto v1 = weight_table(DominantWeight({1, 0}));
  EXPECT_EQ(product(CharacterTable::one(2), v1), v1);
  const auto sq = product(v1, v1);
  EXPECT_EQ(sq.mass(), 4);
  EXPECT_EQ(sq.multiplicity(WeightVector({2, 0})), 1);
  EXPECT_EQ(sq.multiplicity(WeightVector({1, 1})), 2);
  EXPECT_EQ(sq.multiplicity(WeightVector({0, 2})), 1);
}

TEST(TensorDecompose, Examples) {
  using Map = std::map<DominantWeight, std::int64_t>;
  const Map adjoint_plus_one{{DominantWeight::zero(3), 1}, {DominantWeight({2, 1, 0}), 1}};
  EXPECT_EQ(tensor_decompose(TensorSpec(3, {1, 0, 1, 0})), adjoint_plus_one);
  EXPECT_EQ(tensor_decompose(TensorSpec(3, {1, 1, 0, 0})), adjoint_plus_one);
  const Map cube{{DominantWeight({3, 0, 0}), 1}, {DominantWeight({2, 1, 0}), 2}, {DominantWeight::zero(3), 1}};
  EXPECT_EQ(tensor_decompose(TensorSpec(3, {3, 0, 0, 0})), cube);
  EXPECT_EQ(tensor_decompose(TensorSpec::zero(4)), (Map{{DominantWeight::zero(4), 1}}));
}

TEST(TensorDecompose, ReconstructsProductTable) {
  for (int n = 2; n <= 4; ++n) {
    for (const TensorSpec& spec : TensorSpec::enumerate(n, 3)) {
      const auto table = tensor_product_table(spec);
      CharacterTable rebuilt(n);
      for (const auto& [mu, a] : tensor_decompose(spec)) {
        ASSERT_GT(a, 0);
        rebuilt.add_scaled(weight_table(mu), a);
      }
      ASSERT_EQ(rebuilt, table) << spec.str();
    }
  }
}

TEST(TrivialMultiplicity, Examples) {
  EXPECT_EQ(trivial_multiplicity(TensorSpec(3, {1, 1, 0, 0})), 1);
  EXPECT_EQ(trivial_multiplicity(TensorSpec(3, {1, 0, 1, 0})), 1);
  EXPECT_EQ(trivial_multiplicity(TensorSpec(3, {3, 0, 0, 0})), 1);
  EXPECT_EQ(trivial_multiplicity(TensorSpec(3, {1, 0, 0, 0})), 0);
  EXPECT_EQ(trivial_multiplicity(TensorSpec(2, {2, 2})), 2);
  EXPECT_EQ(trivial_multiplicity(TensorSpec(4, {1, 0, 1, 0, 1, 0})), 0);
}

TEST(TrivialMultiplicity, MatchesWeylIntegration) {
  for (int n = 2; n <= 3; ++n) {
    for (const TensorSpec& spec : TensorSpec::enumerate(n, 4)) {
      ASSERT_EQ(trivial_multiplicity(spec), oracle::trivial_multiplicity_weyl(n, std::vector<int>(spec.exponents().begin(), spec.exponents().end())))
          << spec.str();
    }
  }
  for (const TensorSpec& spec : TensorSpec::enumerate(4, 2)) {
    ASSERT_EQ(trivial_multiplicity(spec), oracle::trivial_multiplicity_weyl(4, std::vector<int>(spec.exponents().begin(), spec.exponents().end())))
        << spec.str();
  }
}

TEST(TrivialMultiplicity, DegreeTwoOnesForRankThree) {
  std::vector<std::string> ones;
  for (const TensorSpec& spec : TensorSpec::enumerate(3, 2)) {
    if (trivial_multiplicity(spec) == 1) ones.push_back(spec.str());
  }
  EXPECT_EQ(ones, (std::vector<std::string>{"0,0,0,0", "0,0,1,1", "0,1,0,1", "1,0,1,0", "1,1,0,0"}));
}

TEST(TensorSpec, Validation) {
  EXPECT_THROW(TensorSpec(3, {1, 0}), Error);
  EXPECT_THROW(TensorSpec(3, {1, 0, -1, 0}), Error);
  EXPECT_EQ(TensorSpec(3, {1, 2, 3, 4}).degree(), 10);
  EXPECT_EQ(TensorSpec::enumerate(3, 1).size(), 5u);
}

TEST(EvalChar, Examples) {
  const std::vector<Complex> ones(3, Complex{1.0, 0.0});
  EXPECT_NEAR(std::abs(eval_char(DominantWeight({1, 1, 0}), ones) - 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_char(DominantWeight({2, 1, 0}), ones) - 8.0), 0.0, 1e-12);
  std::mt19937_64 rng(3);
  const auto a = random_alphas(4, rng, 0.4);
  EXPECT_NEAR(std::abs(eval_char(DominantWeight({1, 0, 0, 0}), a) - (a[0] + a[1] + a[2] + a[3])), 0.0, 1e-12);
  EXPECT_THROW(eval_char(DominantWeight({1, 0}), std::vector<Complex>{Complex{}, Complex{1.0, 0.0}}), Error);
}

TEST(EvalChar, AgreesWithBruteForceAndBialternant) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    for (const DominantWeight& mu : partitions(n, 4)) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto a = random_alphas(n, rng, 0.5);
        const Complex jt = eval_char(mu, a);
        const Complex brute = oracle::schur_brute({mu.parts().begin(), mu.parts().end()}, a);
        const Complex bi = eval_char_bialternant(mu, a);
        const double scale = std::max(1.0, std::abs(brute));
        ASSERT_LT(std::abs(jt - brute) / scale, 1e-10) << mu.str();
        ASSERT_LT(std::abs(bi - brute) / scale, 1e-8) << mu.str();
      }
    }
  }
}

TEST(EvalChar, AgreesWithWeightTable) {
  std::mt19937_64 rng(8);
  const DominantWeight mu({3, 1, 0});
  const auto table = weight_table(mu);
  const auto a = random_alphas(3, rng, 0.3);
  Complex sum{};
  for (const auto& [w, c] : table.terms()) {
    Complex term = static_cast<double>(c);
    for (int i = 0; i < 3; ++i) term *= std::pow(a[static_cast<std::size_t>(i)], w.coords()[static_cast<std::size_t>(i)]);
    sum += term;
  }
  EXPECT_LT(std::abs(sum - eval_char(mu, a)), 1e-10);
}

TEST(ElementarySymmetric, MatchesSubsetSums) {
  std::mt19937_64 rng(9);
  const auto a = random_alphas(5, rng, 0.6);
  const auto e = elementary_symmetric(a);
  ASSERT_EQ(e.size(), 6u);
  for (int k = 0; k <= 5; ++k) EXPECT_LT(std::abs(e[static_cast<std::size_t>(k)] - oracle::elementary_brute(a, k)), 1e-12);
}

TEST(DominantPartSum, Examples) {
  EXPECT_DOUBLE_EQ(dominant_part_sum(TensorSpec(3, {1, 0, 0, 0}), 4.0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(dominant_part_sum(TensorSpec(3, {1, 0, 1, 0}), 4.0, 0.5), 7.0);
  EXPECT_DOUBLE_EQ(dominant_part_sum(TensorSpec::zero(3), 3.0, 0.25), 1.0);
  EXPECT_NEAR(dominant_part_sum(TensorSpec(3, {1, 0, 1, 0}), 2.0, 7.0 / 64.0), 4.1637248587775773, 1e-13);
}

TEST(SpecializationBound, Examples) {
  EXPECT_DOUBLE_EQ(specialization_bound_n3(TensorSpec(3, {1, 0, 0, 0}), 4.0, 0.5), 3.5);
  EXPECT_DOUBLE_EQ(specialization_bound_n3(TensorSpec::zero(3), 4.0, 0.5), 1.0);
  EXPECT_NEAR(specialization_bound_n3(TensorSpec(3, {1, 1, 0, 0}), 2.0, 7.0 / 64.0), 9.0345352284364413, 1e-12);
  EXPECT_THROW(specialization_bound_n3(TensorSpec(2, {1, 0}), 2.0, 0.5), Error);
}
