#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/certificate.hpp"
#include "ssg/matrix_game.hpp"

using namespace ssg;

TEST(MatrixGame, MatchingPennies) {
  Eigen::MatrixXd G(2, 2);
  G << 2, 1, 1, 2;
  const auto s = solve_matrix_game(G);
  EXPECT_NEAR(s.value, 1.5, 1e-12);
  EXPECT_NEAR(s.row[0], 0.5, 1e-12);
  EXPECT_NEAR(s.col[1], 0.5, 1e-12);
}

TEST(MatrixGame, DominatedColumn) {
  Eigen::MatrixXd G(2, 3);
  G << 3, 1, 4, 2, 1, 5;
  const auto s = solve_matrix_game(G);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
  EXPECT_NEAR(s.col[1], 1.0, 1e-12);
}

TEST(Certificate, TreeAtFullActivation) {
  const RootedGraph g = make_tree("((()())(()))");
  const auto c = approximate_value(g, ActivationParams(g, 1.0));
  EXPECT_LE(c.gap(), 1e-3);
  EXPECT_NEAR(c.midpoint(), g.num_edges(), 1e-3);
}

TEST(Certificate, Circle) {
  const RootedGraph g = make_circle(4);
  const auto c = approximate_value(g, ActivationParams(g, 0.7));
  EXPECT_TRUE(c.converged);
  EXPECT_NEAR(c.midpoint(), 1 / (1 - 0.09) + 3 / 1.4, 1e-3);
}

TEST(Certificate, InsideBounds) {
  const RootedGraph g = make_parallel(std::vector<int>{1, 2, 1});
  const ActivationParams params(g, 0.6);
  const auto c = approximate_value(g, params);
  const auto b = stochastic_bounds(g, params);
  EXPECT_GE(c.lower, b.lower - 1e-12);
  EXPECT_LE(c.upper, b.upper + 1e-12);
  EXPECT_LE(c.lower, c.upper + 1e-12);
}

TEST(Certificate, FrankWolfeStillBrackets) {
  const RootedGraph g = make_line(2, 1);
  CertificateOptions o;
  o.method = CertificateMethod::kFrankWolfe;
  o.iteration_cap = 100;
  const auto c = approximate_value(g, ActivationParams(g, 0.5), o);
  const int lens[] = {2, 1};
  const double v = closed_form_value(ClosedFormFamily::kLine, lens, 0.5).value;
  EXPECT_LE(c.lower, v + 1e-9);
  EXPECT_GE(c.upper, v - 1e-9);
}

TEST(Certificate, Json) {
  const RootedGraph g = make_circle(3);
  const auto j = approximate_value(g, ActivationParams(g, 0.5)).to_json(g);
  for (const char* k : {"lower", "upper", "gap", "iterations", "converged", "hider", "policy", "log", "meta"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["meta"]["lambda_weighting"], "tau_edge");
}

TEST(DeterministicValue, Families) {
  EXPECT_NEAR(deterministic_value(make_tree("(()(()()()))")).midpoint(), 5.0, 1e-6);
  EXPECT_NEAR(deterministic_value(make_circle(5)).midpoint(), 3.0, 1e-6);
  // three unit arcs: the walk a, b, c never has to come back, so a uniform
  // mix over the orderings meets the (|E|+1)/2 lower bound
  const auto gal = deterministic_value(make_parallel(std::vector<int>{1, 1, 1}));
  EXPECT_NEAR(gal.lower, 2.0, 1e-6);
  EXPECT_NEAR(gal.upper, 2.0, 1e-6);
}
