#include <bbstep/oracles.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace bbstep;

TEST(MinimizeScalar, Parabola) {
  EXPECT_NEAR(minimize_scalar([](double x) { return (x - 3) * (x - 3); }, 0.0, 10.0, 1e-8), 3.0,
              1e-7);
}

TEST(MinimizeScalar, Kink) {
  EXPECT_NEAR(minimize_scalar([](double x) { return std::abs(x); }, -1.0, 2.0, 1e-8), 0.0, 1e-8);
}

TEST(MinimizeScalar, MinimumAtBracketEdge) {
  EXPECT_NEAR(minimize_scalar([](double x) { return x; }, 2.0, 5.0, 1e-9), 2.0, 1e-8);
  EXPECT_NEAR(minimize_scalar([](double x) { return -x; }, 2.0, 5.0, 1e-9), 5.0, 1e-8);
}

TEST(MinimizeScalar, GridFindsGlobalCellOfMultimodal) {
  // Two wells; the deeper one sits at 4.
  auto fn = [](double x) { return std::min((x - 1) * (x - 1) + 0.5, (x - 4) * (x - 4)); };
  EXPECT_NEAR(minimize_scalar(fn, 0.0, 6.0, 1e-9), 4.0, 1e-8);
}

TEST(MinimizeScalar, TlsObjectiveOfGoldenPair) {
  const SecantPair p({1, 0}, {1, 1});
  const double x = minimize_scalar([&](double a) { return tls_objective(a, p); }, 0.0, 10.0, 1e-9);
  EXPECT_NEAR(x, 0.6180339887, 1e-7);
}

TEST(MinimizeScalar, InvalidBracket) {
  auto fn = [](double x) { return x * x; };
  EXPECT_THROW(minimize_scalar(fn, 1.0, 1.0, 1e-6), InvalidBracket);
  EXPECT_THROW(minimize_scalar(fn, 2.0, 1.0, 1e-6), InvalidBracket);
}

TEST(VerifyBb3, Examples) {
  const auto same = verify_bb3(SecantPair({1, 1}, {1, 1}), 1e-6);
  EXPECT_EQ(same.closed_form, 1.0);
  EXPECT_NEAR(same.oracle, 1.0, 1e-9);
  EXPECT_TRUE(same.agree);

  const auto golden = verify_bb3(SecantPair({1, 0}, {1, 1}), 1e-6);
  EXPECT_NEAR(golden.closed_form, 0.6180339887, 1e-10);
  EXPECT_NEAR(golden.oracle, 0.6180339887, 1e-9);
  EXPECT_TRUE(golden.agree);
}

TEST(VerifyBb3, DegenerateAndNegativePairs) {
  EXPECT_THROW(verify_bb3(SecantPair({1, 0}, {0, 1}), 1e-6), DegeneratePair);
  EXPECT_THROW(verify_bb3(SecantPair({1, 0}, {-1, 0}), 1e-6), DomainError);
}

TEST(VerifyBb3, SeededSweep) {
  const auto report = verify_bb3_sweep(2000, 42, 1e-6);
  EXPECT_EQ(report.seed, 42u);
  EXPECT_EQ(report.count, 2000u);
  EXPECT_EQ(report.disagreements, 0u);
  EXPECT_LE(report.worst_relative_error, 1e-6);
}

TEST(Oracle, MinimizerContainedInSandwich) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    const auto p = random_positive_pair(rng);
    const auto v = verify_bb3(p, 1e-6);
    const double lo = bb1(p).value, hi = bb2(p).value;
    EXPECT_GE(v.oracle, lo * (1 - 1e-6));
    EXPECT_LE(v.oracle, hi * (1 + 1e-6));
  }
}
