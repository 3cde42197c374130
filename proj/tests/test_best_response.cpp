#include <gtest/gtest.h>

#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/best_response.hpp"
#include "ssg/errors.hpp"
#include "ssg/policy_eval.hpp"

using namespace ssg;

TEST(BestResponse, SingleEdge) {
  const RootedGraph g = make_path(1);
  const auto br = best_response_value(g, ActivationParams(g, 0.2), HiderDistribution::point(g, 0));
  EXPECT_NEAR(br.value(), 5.0, 1e-12);
}

TEST(BestResponse, TwoLeafLine) {
  const RootedGraph g = make_line(1, 1);
  const auto br = best_response_value(g, ActivationParams(g, 1.0), uniform_density(g));
  EXPECT_NEAR(br.value(), 2.0, 1e-12);
}

TEST(BestResponse, SimpleTreeLowP) {
  const RootedGraph g = make_simple_binary_tree();
  std::vector<double> m(g.num_edges(), 0.0);
  for (const char* e : {"e1", "e21", "e22"}) m[g.edge_index(e)] = 1.0;
  const double p = 0.1;
  const auto br = best_response_value(g, ActivationParams(g, p), HiderDistribution(g, m));
  // ε(I) W on the full support equals W; the hider has mass 1 there
  EXPECT_NEAR(br.value(), simple_tree_low_p_value(p), 1e-9);
}

TEST(BestResponse, PolicyAchievesValue) {
  const RootedGraph g = make_circle(5);
  const ActivationParams params(g, 0.35);
  const HiderDistribution eps(g, {0.1, 0.3, 0.2, 0.25, 0.15});
  const auto br = best_response_value(g, params, eps);
  EXPECT_LE(br.residual(), 1e-9);
  const auto ht = policy_hitting_times(g, params, *br.policy());
  EXPECT_NEAR(*ht.payoff(eps), br.value(), 1e-9);
}

TEST(BestResponse, BeatsEveryBuiltIn) {
  const RootedGraph g = make_simple_binary_tree();
  const double p = 0.45;
  const ActivationParams params(g, p);
  const auto eps = ebd(TreeView(g), p);
  const auto br = best_response_value(g, params, eps);
  for (const auto& pol : enumerate_pure_dfs(g)) {
    EXPECT_LE(br.value(), *policy_hitting_times(g, params, *pol).payoff(eps) + 1e-12);
  }
  EXPECT_LE(br.value(), *policy_hitting_times(g, params, *ucps(g)).payoff(eps) + 1e-12);
}

TEST(BestResponse, ValueIterationAgrees) {
  const RootedGraph g = make_parallel(std::vector<int>{1, 2, 1});
  const ActivationParams params(g, std::vector<double>{0.3, 0.9, 0.6, 0.5});
  const auto eps = uniform_density(g);
  const auto vi = value_iteration(g, params, eps, 1e-11);
  EXPECT_LT(vi.max_difference, 1e-8);
  EXPECT_TRUE(vi.monotone);
  EXPECT_NEAR(vi.value, best_response_value(g, params, eps).value(), 1e-8);
}

TEST(BestResponse, ValueIterationGivesUp) {
  const RootedGraph g = make_line(3, 2);
  EXPECT_THROW(value_iteration(g, ActivationParams(g, 0.05), uniform_density(g), 1e-14, 5), ConvergenceError);
}

TEST(BestResponse, SupportCap) {
  const RootedGraph g = make_circle(17);
  EXPECT_THROW(best_response_value(g, ActivationParams(g, 0.5), uniform_density(g)), CapacityError);
}
