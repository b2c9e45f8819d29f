#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "neurochaos/chaosfex.hpp"
#include "neurochaos/errors.hpp"
#include "support/reference.hpp"

using namespace neurochaos;

namespace {

Matrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix X(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) X(i, j) = u(gen);
  return X;
}

}  // namespace

TEST(Features, FiringRate) {
  EXPECT_DOUBLE_EQ(firing_rate(std::vector<double>{0.25, 0.5}, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(firing_rate(std::vector<double>{0.9, 0.9, 0.9}, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(firing_rate(std::vector<double>{0.1}, 0.5), 0.0);
}

TEST(Features, Energy) {
  EXPECT_DOUBLE_EQ(energy(std::vector<double>{0.3}), 0.09);
  EXPECT_DOUBLE_EQ(energy(std::vector<double>{0.25, 0.5}), 0.3125);
  const std::vector<double> near_one(7, 1.0 - 1e-9);
  EXPECT_LE(energy(near_one), 7.0);
}

TEST(Features, Entropy) {
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.9, 0.9, 0.9}, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.25, 0.5}, 0.5), 1.0);
  const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  EXPECT_NEAR(entropy(std::vector<double>{0.6, 0.2, 0.2, 0.2}, 0.5), h, 1e-15);
  EXPECT_NEAR(h, 0.8112, 1e-4);
}

TEST(Features, EntropyEndpoints) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> lo(0.0, 0.49), hi(0.5, 0.999);
  for (std::size_t len = 1; len <= 64; ++len) {
    std::vector<double> zeros(len), ones(len), balanced;
    for (auto& v : zeros) v = lo(gen);
    for (auto& v : ones) v = hi(gen);
    EXPECT_EQ(entropy(zeros, 0.5), 0.0);
    EXPECT_EQ(entropy(ones, 0.5), 0.0);
    for (std::size_t k = 0; k < len; ++k) balanced.push_back(lo(gen)), balanced.push_back(hi(gen));
    EXPECT_DOUBLE_EQ(entropy(balanced, 0.5), 1.0);
  }
  EXPECT_EQ(binary_entropy(0, 5), 0.0);
  EXPECT_EQ(binary_entropy(5, 5), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(3, 6), 1.0);
}

TEST(Transform, SingleNeuronWorkedExample) {
  Matrix X(1, 1, 0.5);
  const auto layout = build_layout(1, LayoutScheme::HomogeneousGLS);
  const Hyperparams hp{0.25, 0.5, 0.01};
  const auto F = transform(X, layout, hp);
  ASSERT_EQ(F.rows(), 1u);
  ASSERT_EQ(F.cols(), 4u);
  EXPECT_DOUBLE_EQ(F(0, 0), 2.0 / kDefaultIterationCap);
  EXPECT_DOUBLE_EQ(F(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(F(0, 2), 0.3125 / 2);
  EXPECT_DOUBLE_EQ(F(0, 3), 1.0);
}

TEST(Transform, RawScalingKeepsCounts) {
  Matrix X(1, 1, 0.5);
  TransformOptions opts;
  opts.scaling = FeatureScaling::Raw;
  const auto F = transform(X, build_layout(1, LayoutScheme::HomogeneousGLS), {0.25, 0.5, 0.01}, opts);
  EXPECT_DOUBLE_EQ(F(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(F(0, 2), 0.3125);
}

TEST(Transform, StimulusEqualToQ) {
  const double q = 0.37;
  Matrix X(1, 5, q);
  const auto F = transform(X, build_layout(5, LayoutScheme::OddEven), {q, 0.2, 0.05});
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_DOUBLE_EQ(F(0, feature_column(j, Feature::FiringTime)), 1.0 / kDefaultIterationCap);
    EXPECT_DOUBLE_EQ(F(0, feature_column(j, Feature::Energy)), q * q);
    EXPECT_DOUBLE_EQ(F(0, feature_column(j, Feature::Entropy)), 0.0);
  }
}

TEST(Transform, IrisShape) {
  std::mt19937_64 gen(1);
  const auto F = transform(random_matrix(150, 4, gen), build_layout(4, LayoutScheme::RandomHeterogeneous, 0.25, 3),
                           {0.062, 0.185, 0.298});
  EXPECT_EQ(F.rows(), 150u);
  EXPECT_EQ(F.cols(), 16u);
}

TEST(Transform, ShapeLawOnRandomShapes) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + gen() % 20, n = 1 + gen() % 12;
    const auto layout = build_layout(n, LayoutScheme::RandomHeterogeneous, 0.5, gen());
    const auto F = transform(random_matrix(m, n, gen), layout, {0.3, 0.4, 0.05}, {1000});
    ASSERT_EQ(F.rows(), m);
    ASSERT_EQ(F.cols(), 4 * n);
  }
}

TEST(Transform, FeaturesBoundedOnRandomTraces) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int t = 0; t < 10000; ++t) {
    const Hyperparams hp{u(gen), u(gen), 0.001 + 0.3 * u(gen)};
    const auto kind = t % 2 ? NeuronKind::Logistic : NeuronKind::GLS;
    const auto f = neuron_features(kind, std::uniform_real_distribution<double>(0, 1)(gen), hp, {2000});
    for (double v : {f.firing_time, f.firing_rate, f.energy, f.entropy}) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(Transform, OracleEquivalence) {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 100; ++t) {
    const Hyperparams hp{u(gen), u(gen), std::pow(10.0, -1.0 - 2.0 * u(gen))};
    const double x = std::uniform_real_distribution<double>(0, 1)(gen);
    const bool logistic = t % 2 == 1;
    Matrix X(1, 1, x);
    const auto layout = build_layout(1, logistic ? LayoutScheme::HomogeneousLogistic : LayoutScheme::HomogeneousGLS);
    const auto F = transform(X, layout, hp);
    const auto ref =
        reference::features(reference::trace(logistic, hp.b, hp.q, x, hp.epsilon, kDefaultIterationCap), hp.b,
                            kDefaultIterationCap);
    EXPECT_DOUBLE_EQ(F(0, 0), ref.firing_time);
    EXPECT_DOUBLE_EQ(F(0, 1), ref.firing_rate);
    EXPECT_NEAR(F(0, 2), ref.energy, 1e-12);
    EXPECT_NEAR(F(0, 3), ref.entropy, 1e-12);
  }
}

TEST(Transform, ColumnPermutationPermutesBlocks) {
  std::mt19937_64 gen(31);
  const auto X = random_matrix(12, 5, gen);
  const auto layout = build_layout(5, LayoutScheme::RandomHeterogeneous, 0.4, 8);
  const Hyperparams hp{0.21, 0.43, 0.02};
  const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  Matrix Xp(12, 5);
  NeuronLayout lp = layout;
  for (std::size_t j = 0; j < 5; ++j) {
    lp.kinds[j] = layout.kinds[perm[j]];
    for (std::size_t i = 0; i < 12; ++i) Xp(i, j) = X(i, perm[j]);
  }
  const auto F = transform(X, layout, hp), Fp = transform(Xp, lp, hp);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t f = 0; f < 4; ++f) ASSERT_EQ(Fp(i, 4 * j + f), F(i, 4 * perm[j] + f));
}

TEST(Transform, ParallelDeterminism) {
  std::mt19937_64 gen(37);
  const auto X = random_matrix(97, 9, gen);
  const auto layout = build_layout(9, LayoutScheme::RandomHeterogeneous, 0.5, 2);
  const Hyperparams hp{0.1, 0.3, 0.005};
  const auto serial = transform(X, layout, hp, {kDefaultIterationCap, FeatureScaling::Normalized, 1});
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    EXPECT_EQ(transform(X, layout, hp, {kDefaultIterationCap, FeatureScaling::Normalized, threads}), serial);
  }
}

TEST(Transform, CountsNonDetections) {
  Matrix X(2, 1);
  X(0, 0) = 0.5;
  X(1, 0) = 0.9999;
  TransformStats stats;
  transform(X, build_layout(1, LayoutScheme::HomogeneousGLS), {0.1, 0.5, 1e-9}, {5}, &stats);
  EXPECT_EQ(stats.traces, 2u);
  EXPECT_EQ(stats.non_detections, 2u);
}

TEST(Transform, Errors) {
  Matrix X(2, 3, 0.5);
  const Hyperparams hp{0.1, 0.3, 0.01};
  EXPECT_THROW(transform(X, build_layout(4, LayoutScheme::HomogeneousGLS), hp), DimensionError);
  X(1, 2) = 1.2;
  EXPECT_THROW(transform(X, build_layout(3, LayoutScheme::HomogeneousGLS), hp), DomainError);
  X(1, 2) = 0.5;
  EXPECT_THROW(transform(X, build_layout(3, LayoutScheme::HomogeneousGLS), {0.1, 0.3, 0.0}), ParameterError);
}

TEST(FeatureCsv, HeaderAndLabels) {
  EXPECT_EQ(feature_csv_header(2), (std::vector<std::string>{"f0_time", "f0_rate", "f0_energy", "f0_entropy",
                                                             "f1_time", "f1_rate", "f1_energy", "f1_entropy"}));
  Matrix F(1, 4, std::vector<double>{0.5, 0.25, 0.1, 1.0});
  std::ostringstream out;
  const std::vector<int> labels{2};
  write_feature_csv(out, F, labels);
  EXPECT_EQ(out.str(), "f0_time,f0_rate,f0_energy,f0_entropy,label\n0.5,0.25,0.1,1,2\n");
}
