#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mugen/error.hpp"
#include "mugen/xmetrics.hpp"
#include "oracles.hpp"

using namespace mugen;
using namespace mugen::xmetrics;
using Mat = Matrix<double>;
using mugen::testing::direct_loss;
using mugen::testing::sorted_recall;

namespace {

Mat random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> d;
  Mat m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Scores, OrthonormalGivesIdentity) {
  const Mat I = Mat::Identity(4, 4);
  EXPECT_TRUE(pairwise_scores(I, I, MetricConfig<double>{}).isApprox(I));
}

TEST(Scores, MatchesDirectCosine) {
  std::mt19937_64 rng(1);
  const auto cfg = MetricConfig<double>::from_tau(0.7);
  for (int t = 0; t < 50; ++t) {
    const Mat P = random_matrix(rng, 4, 8);
    const Mat Q = random_matrix(rng, 4, 8);
    const Mat S = pairwise_scores(P, Q, cfg);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        EXPECT_NEAR(S(i, j), P.row(i).dot(Q.row(j)) / (P.row(i).norm() * Q.row(j).norm()) * std::exp(0.7), 1e-9);
  }
}

TEST(Scores, ScaleIsCapped) {
  EXPECT_DOUBLE_EQ(MetricConfig<double>::from_tau(10.0).scale(), 100.0);
  EXPECT_DOUBLE_EQ(MetricConfig<double>::from_temperature(0.07).scale(), 1 / 0.07);
  EXPECT_DOUBLE_EQ(MetricConfig<double>::from_tau(0.0).scale(), 1.0);
  EXPECT_EQ(code_of([] { MetricConfig<double>::from_temperature(0.0); }), ErrorCode::InvalidConfig);
}

TEST(Scores, Errors) {
  const MetricConfig<double> cfg;
  EXPECT_EQ(code_of([&] { pairwise_scores(Mat(2, 3), Mat::Ones(2, 4), cfg); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { pairwise_scores(Mat::Zero(2, 3), Mat::Ones(2, 3), cfg); }), ErrorCode::ZeroNormVector);
  EXPECT_EQ(code_of([&] { pairwise_scores(Mat(0, 3), Mat::Ones(2, 3), cfg); }), ErrorCode::EmptyInput);
  Mat nan = Mat::Ones(2, 3);
  nan(0, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { pairwise_scores(nan, Mat::Ones(2, 3), cfg); }), ErrorCode::InvalidConfig);
}

TEST(Loss, SingleElementBatchIsZero) {
  std::mt19937_64 rng(2);
  EXPECT_NEAR(contrastive_loss(random_matrix(rng, 1, 5), random_matrix(rng, 1, 5), MetricConfig<double>{}), 0.0,
              1e-12);
}

TEST(Loss, TwoOrthonormalPairs) {
  const Mat I = Mat::Identity(2, 2);
  const double v = contrastive_loss(I, I, MetricConfig<double>{});
  EXPECT_NEAR(v, std::log(1 + std::exp(-1.0)), 1e-9);
  EXPECT_NEAR(v, 0.31326, 1e-5);
}

TEST(Loss, MatchesDirectEvaluation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n(1, 8), d(1, 16);
  std::uniform_real_distribution<double> tau(-1.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    const int rows = n(rng), cols = d(rng);
    const Mat P = random_matrix(rng, rows, cols);
    const Mat Q = random_matrix(rng, rows, cols);
    const auto cfg = MetricConfig<double>::from_tau(tau(rng));
    EXPECT_NEAR(contrastive_loss(P, Q, cfg), direct_loss(P, Q, cfg.scale()), 1e-6);
  }
}

TEST(Loss, StableAtLargeScale) {
  std::mt19937_64 rng(4);
  const Mat P = random_matrix(rng, 6, 4);
  const double v = contrastive_loss(P, P, MetricConfig<double>::from_tau(50.0));
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
}

TEST(Loss, FloatInstantiation) {
  const Matrix<float> I = Matrix<float>::Identity(2, 2);
  EXPECT_NEAR(contrastive_loss(I, I, MetricConfig<float>{}), std::log(1 + std::exp(-1.0)), 1e-5);
}

TEST(Loss, BatchMismatch) {
  EXPECT_EQ(code_of([] { contrastive_loss(Mat::Ones(2, 3), Mat::Ones(3, 3), MetricConfig<double>{}); }),
            ErrorCode::DimensionMismatch);
}

TEST(Recall, Identity) {
  const auto r = recall_at_k(Mat::Identity(10, 10), {1, 5, 10});
  EXPECT_EQ(r, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Recall, AlwaysSecond) {
  Mat S = Mat::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    S(i, i) = 0.5;
    S(i, (i + 1) % 6) = 0.9;
  }
  EXPECT_EQ(recall_at_k(S, {1, 2, 5}), (std::vector<double>{0.0, 1.0, 1.0}));
}

TEST(Recall, MatchesSortingOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    Mat S = random_matrix(rng, 20, 20);
    if (t % 5 == 0) S = S.array().round();   // plenty of ties
    const auto r = recall_at_k(S, {1, 5, 10, 20});
    EXPECT_DOUBLE_EQ(r[0], sorted_recall(S, 1));
    EXPECT_DOUBLE_EQ(r[1], sorted_recall(S, 5));
    EXPECT_DOUBLE_EQ(r[2], sorted_recall(S, 10));
    EXPECT_DOUBLE_EQ(r[3], 1.0);
  }
}

TEST(Recall, Errors) {
  EXPECT_EQ(code_of([] { recall_at_k(Mat::Ones(2, 3), {1}); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { recall_at_k(Mat::Ones(3, 3), {0}); }), ErrorCode::BadK);
  EXPECT_EQ(code_of([] { recall_at_k(Mat::Ones(3, 3), {4}); }), ErrorCode::BadK);
}

TEST(Ensemble, Additive) {
  std::mt19937_64 rng(6);
  const Mat S1 = random_matrix(rng, 5, 5);
  EXPECT_EQ(ensemble_scores(S1, Mat::Zero(5, 5)), S1);
  EXPECT_EQ(ensemble_scores(S1, S1), Mat(2 * S1));
  EXPECT_EQ(code_of([&] { ensemble_scores(S1, Mat::Zero(5, 4)); }), ErrorCode::ShapeMismatch);
}

TEST(Ensemble, SumCanFixBothRankings) {
  // Each matrix alone puts a distractor first on one row; the sum does not.
  Mat S1(2, 2), S2(2, 2);
  S1 << 0.6, 0.7, 0.1, 0.9;
  S2 << 0.9, 0.1, 0.7, 0.6;
  EXPECT_DOUBLE_EQ(recall_at_k(S1, {1})[0], 0.5);
  EXPECT_DOUBLE_EQ(recall_at_k(S2, {1})[0], 0.5);
  EXPECT_DOUBLE_EQ(recall_at_k(ensemble_scores(S1, S2), {1})[0], 1.0);
}

TEST(RelativeSimilarity, Cases) {
  const std::vector<double> gt = {0.8, 0.4, 0.6};
  EXPECT_EQ(relative_similarity(gt, gt), 1.0);
  EXPECT_EQ(relative_similarity(std::vector<double>{0.4, 0.2, 0.3}, gt), 0.5);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(12), b(12);
    double sa = 0, sb = 0;
    for (int i = 0; i < 12; ++i) {
      sa += a[static_cast<std::size_t>(i)] = u(rng);
      sb += b[static_cast<std::size_t>(i)] = u(rng);
    }
    EXPECT_NEAR(relative_similarity(a, b), (sa / 12) / (sb / 12), 1e-12);
  }
  EXPECT_EQ(code_of([] { relative_similarity(std::vector<double>{}, std::vector<double>{}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { relative_similarity(std::vector<double>{1}, std::vector<double>{1, 2}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { relative_similarity(std::vector<double>{1, 1}, std::vector<double>{1, -1}); }),
            ErrorCode::ZeroDenominator);
}

TEST(Csv, RoundTrip) {
  std::mt19937_64 rng(8);
  const Mat m = random_matrix(rng, 3, 4);
  EXPECT_EQ(parse_matrix_csv(format_matrix_csv(m)), m);
  EXPECT_EQ(code_of([] { parse_matrix_csv("1,2\n3\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_matrix_csv("1,x\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_matrix_csv(""); }), ErrorCode::EmptyInput);
}
