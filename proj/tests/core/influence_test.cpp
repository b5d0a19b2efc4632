#include <cmath>

#include <gtest/gtest.h>

#include "bids/error.hpp"
#include "bids/influence.hpp"
#include "bids/rng.hpp"
#include "support/oracles.hpp"

namespace bids {
namespace {

GradientFeatureSet one_epoch(FeatureMatrix train, FeatureMatrix val, double lr) {
  GradientFeatureSet f;
  f.train_features.push_back(std::move(train));
  f.val_features.push_back(std::move(val));
  f.learning_rates.push_back(lr);
  return f;
}

TEST(AdamInfluence, ParallelFeatures) {
  const auto a = adam_influence(
      one_epoch(FeatureMatrix::from_rows({{1, 2}}), FeatureMatrix::from_rows({{2, 4}}), 0.1));
  EXPECT_NEAR(a(0, 0), 0.1, 1e-15);
}

TEST(AdamInfluence, OrthogonalFeatures) {
  const auto a = adam_influence(
      one_epoch(FeatureMatrix::from_rows({{1, 0}}), FeatureMatrix::from_rows({{0, 3}}), 0.1));
  EXPECT_EQ(a(0, 0), 0.0);
}

TEST(AdamInfluence, SumsOverEpochs) {
  GradientFeatureSet f;
  f.train_features = {FeatureMatrix::from_rows({{1, 0}}), FeatureMatrix::from_rows({{1, 0}})};
  f.val_features = {FeatureMatrix::from_rows({{1, 0}}), FeatureMatrix::from_rows({{-1, 0}})};
  f.learning_rates = {0.1, 0.2};
  EXPECT_NEAR(adam_influence(f)(0, 0), -0.1, 1e-15);
}

TEST(AdamInfluence, BasisVectors) {
  const auto a = adam_influence(one_epoch(FeatureMatrix::from_rows({{1, 0, 0}, {0, 1, 0}}),
                                          FeatureMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}),
                                          1.0));
  EXPECT_EQ(a(0, 0), 0.0);
  EXPECT_EQ(a(0, 1), 1.0);
  EXPECT_EQ(a(0, 2), 0.0);
  EXPECT_EQ(a(1, 0), 1.0);
  EXPECT_EQ(a(1, 1), 0.0);
}

TEST(AdamInfluence, DiagonalAngle) {
  const auto a = adam_influence(
      one_epoch(FeatureMatrix::from_rows({{1, 1}}), FeatureMatrix::from_rows({{1, 0}}), 1.0));
  EXPECT_NEAR(a(0, 0), 0.7071067811865475, 1e-15);
}

TEST(AdamInfluence, ZeroNormContributesNothing) {
  const auto a = adam_influence(
      one_epoch(FeatureMatrix::from_rows({{0, 0}, {1, 0}}), FeatureMatrix::from_rows({{1, 1}}), 1.0));
  EXPECT_EQ(a(0, 0), 0.0);
  EXPECT_TRUE(std::isfinite(a(1, 0)));
}

TEST(AdamInfluence, ScaleInvariantAndBounded) {
  const auto train = testing::random_matrix(30, 16, 1);
  const auto val = testing::random_matrix(12, 16, 2);
  std::vector<double> scaled(train.values().begin(), train.values().end());
  for (double& x : scaled) x *= 1e6;
  const auto a = adam_influence(one_epoch(train, val, 0.5));
  const auto b = adam_influence(one_epoch(FeatureMatrix(30, 16, scaled), val, 0.5));
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      EXPECT_NEAR(a(i, j), b(i, j), 1e-14);
      EXPECT_LE(std::abs(a(i, j)), 0.5);
    }
  }
}

TEST(AdamInfluence, MatchesOracleAcrossEpochs) {
  GradientFeatureSet f;
  for (std::uint64_t t = 0; t < 3; ++t) {
    f.train_features.push_back(testing::random_matrix(25, 8, 10 + t));
    f.val_features.push_back(testing::random_matrix(9, 8, 20 + t));
    f.learning_rates.push_back(1e-3 * static_cast<double>(t + 1));
  }
  const auto a = adam_influence(f);
  ASSERT_EQ(a.n_train(), 25u);
  ASSERT_EQ(a.n_val(), 9u);
  for (std::size_t i = 0; i < 25; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      double expected = 0.0;
      for (std::size_t t = 0; t < 3; ++t) {
        expected += f.learning_rates[t] * testing::naive_cosine(f.val_features[t].row(j),
                                                                 f.train_features[t].row(i));
      }
      EXPECT_NEAR(a(i, j), expected, 1e-15);
    }
  }
}

TEST(AdamInfluence, SingleUnitEpochEqualsCosineSimilarity) {
  const auto train = testing::random_matrix(20, 5, 3);
  const auto val = testing::random_matrix(7, 5, 4);
  EXPECT_EQ(adam_influence(one_epoch(train, val, 1.0)), cosine_similarity_matrix(train, val));
}

TEST(AdamInfluence, ShapeErrors) {
  EXPECT_THROW(adam_influence(one_epoch(FeatureMatrix::from_rows({{1, 2}}),
                                        FeatureMatrix::from_rows({{1, 2, 3}}), 1.0)),
               DimensionError);

  GradientFeatureSet f;
  f.train_features = {FeatureMatrix::from_rows({{1}}), FeatureMatrix::from_rows({{1}, {2}})};
  f.val_features = {FeatureMatrix::from_rows({{1}}), FeatureMatrix::from_rows({{1}})};
  f.learning_rates = {1, 1};
  EXPECT_THROW(adam_influence(f), DimensionError);

  f.train_features.pop_back();
  EXPECT_THROW(adam_influence(f), Error);

  auto g = one_epoch(FeatureMatrix::from_rows({{1}}), FeatureMatrix::from_rows({{1}}),
                     std::numeric_limits<double>::infinity());
  EXPECT_THROW(adam_influence(g), ValidationError);

  EXPECT_THROW(adam_influence(GradientFeatureSet{}), Error);
}

TEST(CosineSimilarity, IdenticalRowsGiveExactlyOne) {
  const auto x = testing::random_matrix(10, 33, 8, 1e-3);
  const auto s = cosine_similarity_matrix(x, x);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s(i, i), 1.0);
}

}  // namespace
}  // namespace bids
