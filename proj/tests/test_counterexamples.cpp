#include <gtest/gtest.h>

#include <cmath>

#include "ssg/counterexamples.hpp"

using namespace ssg;

TEST(TreeCounterexample, WaitingBeatsGoingUp) {
  for (double p : {0.5, 0.9}) {
    const auto r = tree_counterexample_check(p);
    EXPECT_LT(r.difference, 0.0) << p;
    EXPECT_NEAR(r.g1, r.g1_formula, 1e-9);
    EXPECT_NEAR(r.g2, r.g2_formula, 1e-9);
  }
}

TEST(TreeCounterexample, SignMatchesAlgebra) {
  for (int k = 1; k <= 20; ++k) {
    const auto r = tree_counterexample_check(k / 21.0);
    EXPECT_TRUE(r.sign_agrees) << k;
    EXPECT_EQ(std::signbit(r.difference), std::signbit(r.reference)) << k;
  }
}

TEST(EulerianCounterexample, Threshold) {
  EXPECT_LT(eulerian_counterexample_check(0.2).difference, 0.0);
  EXPECT_NEAR(eulerian_counterexample_check(0.4).difference, 0.0, 1e-12);
  EXPECT_GT(eulerian_counterexample_check(0.8).difference, 0.0);
  for (double p : {0.1, 0.3, 0.5, 0.7, 1.0}) {
    const auto r = eulerian_counterexample_check(p);
    EXPECT_TRUE(r.sign_agrees) << p;
    EXPECT_NEAR(r.g2 - r.g1, r.difference, 1e-15);
  }
}
