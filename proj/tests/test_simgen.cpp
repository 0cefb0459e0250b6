#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wcpd/simgen.hpp"

using namespace wcpd;

namespace {

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST(Sample, NormalMoments) {
  const auto v = sample(DistSpec::normal(0, 1), 1'000'000, 42);
  EXPECT_NEAR(mean(v), 0.0, 0.005);
  EXPECT_NEAR(variance(v), 1.0, 0.01);
}

TEST(Sample, LaplaceUnitVariance) {
  const auto v = sample(DistSpec::laplace(0, 1 / std::sqrt(2.0)), 1'000'000, 43);
  EXPECT_NEAR(variance(v), 1.0, 0.01);
  EXPECT_NEAR(mean(v), 0.0, 0.005);
}

TEST(Sample, LocationAndScaleApplied) {
  const auto v = sample(DistSpec::normal(3, 2), 200'000, 1);
  EXPECT_NEAR(mean(v), 3.0, 0.03);
  EXPECT_NEAR(std::sqrt(variance(v)), 2.0, 0.02);
  const auto l = sample(DistSpec::laplace(-1, 2), 200'000, 2);
  EXPECT_NEAR(mean(l), -1.0, 0.03);
  EXPECT_NEAR(variance(l), 8.0, 0.15);
}

TEST(Sample, Deterministic) {
  EXPECT_EQ(sample(DistSpec::normal(0, 1), 1000, 9), sample(DistSpec::normal(0, 1), 1000, 9));
  EXPECT_EQ(sample(DistSpec::laplace(0, 1), 1000, 9), sample(DistSpec::laplace(0, 1), 1000, 9));
  EXPECT_NE(sample(DistSpec::normal(0, 1), 10, 9), sample(DistSpec::normal(0, 1), 10, 10));
}

TEST(Sample, AllFinite) {
  for (double x : sample(DistSpec::laplace(0, 1), 100'000, 5)) ASSERT_TRUE(std::isfinite(x));
}

TEST(DistSpec, RejectsNonPositiveScale) {
  EXPECT_THROW(DistSpec::normal(0, 0), std::exception);
  EXPECT_THROW(DistSpec::laplace(0, -1), std::exception);
}

TEST(Generate, TwoSegments) {
  SeriesSpec spec;
  spec.segments = {{DistSpec::normal(0, 1), 100}, {DistSpec::normal(1, 1), 50}};
  spec.seed = 1;
  const auto s = generate(spec);
  EXPECT_EQ(s.length(), 150u);
  EXPECT_EQ(s.change_points(), (std::vector<std::size_t>{100}));
  EXPECT_EQ(s.dimension(), 1u);
}

TEST(Generate, SharedSpecsShareLabels) {
  SeriesSpec spec;
  const auto a = DistSpec::normal(0, 1), b = DistSpec::laplace(0, 1);
  spec.segments = {{a, 10}, {b, 10}, {a, 10}};
  const auto s = generate(spec);
  ASSERT_EQ(s.labels().size(), 30u);
  EXPECT_EQ(s.labels()[0], 0);
  EXPECT_EQ(s.labels()[10], 1);
  EXPECT_EQ(s.labels()[20], 0);
}

TEST(Generate, SingleSegmentHasNoChangePoints) {
  SeriesSpec spec;
  spec.segments = {{DistSpec::normal(0, 1), 25}};
  EXPECT_TRUE(generate(spec).change_points().empty());
}

TEST(Generate, DeterministicAndMultiDimensional) {
  SeriesSpec spec;
  spec.segments = {{DistSpec::normal(0, 1), 40}, {DistSpec::normal(2, 1), 60}, {DistSpec::laplace(0, 1), 5}};
  spec.dimension = 3;
  spec.seed = 99;
  const auto a = generate(spec), b = generate(spec);
  ASSERT_EQ(a.dimension(), 3u);
  EXPECT_EQ(a.change_points(), (std::vector<std::size_t>{40, 100}));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t t = 0; t < a.length(); ++t) ASSERT_EQ(a.at(t, k), b.at(t, k));
  // channels draw from distinct streams
  EXPECT_NE(a.at(0, 0), a.at(0, 1));
}

TEST(Generate, ChangePointCountMatchesSegments) {
  for (std::size_t n = 1; n <= 8; ++n) {
    SeriesSpec spec;
    for (std::size_t i = 0; i < n; ++i) spec.segments.push_back({DistSpec::normal(static_cast<double>(i % 2), 1), 3 + i});
    EXPECT_EQ(generate(spec).change_points().size(), n - 1);
  }
}

TEST(Generate, SegmentStreamsAreIndependentOfLaterSegments) {
  SeriesSpec a;
  a.seed = 4;
  a.segments = {{DistSpec::normal(0, 1), 30}, {DistSpec::normal(1, 1), 30}};
  SeriesSpec b = a;
  b.segments.push_back({DistSpec::normal(5, 1), 10});
  const auto sa = generate(a), sb = generate(b);
  for (std::size_t t = 0; t < 60; ++t) ASSERT_EQ(sa.at(t, 0), sb.at(t, 0));
}

TEST(Generate, RejectsZeroLength) {
  SeriesSpec spec;
  spec.segments = {{DistSpec::normal(0, 1), 0}};
  EXPECT_THROW(generate(spec), std::exception);
  EXPECT_THROW(generate(SeriesSpec{}), std::exception);
}

TEST(DistSpecText, ToString) {
  EXPECT_FALSE(to_string(DistSpec::normal(0, 1)).empty());
  EXPECT_NE(to_string(DistSpec::normal(0, 1)), to_string(DistSpec::laplace(0, 1)));
}
