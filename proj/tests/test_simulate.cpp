#include <gtest/gtest.h>

#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/errors.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/simulate.hpp"

using namespace ssg;

TEST(Episode, SingleEdgeFullActivation) {
  const RootedGraph g = make_path(1);
  const auto h = simulate_episode(g, ActivationParams(g, 1.0), 0, *udfs(g), 3);
  ASSERT_TRUE(h.capture);
  EXPECT_EQ(*h.capture, 1u);
  EXPECT_FALSE(audit(g, h));
}

TEST(Episode, TwoLeafLine) {
  const RootedGraph g = make_line(1, 1);
  const ActivationParams params(g, 1.0);
  const auto pol = udfs(g);
  int at1 = 0, at3 = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto h = simulate_episode(g, params, 0, *pol, s);
    ASSERT_TRUE(h.capture);
    if (*h.capture == 1) ++at1;
    else if (*h.capture == 3) ++at3;
  }
  EXPECT_EQ(at1 + at3, 2000);
  EXPECT_NEAR(at1 / 2000.0, 0.5, 0.05);
}

TEST(Episode, AuditManyEpisodes) {
  const RootedGraph g = make_simple_binary_tree();
  const ActivationParams params(g, 0.3);
  const auto pol = bdfs(g, 0.3);
  for (std::uint64_t s = 0; s < 20000; ++s) {
    const auto h = simulate_episode(g, params, static_cast<int>(s % 4), *pol, s);
    ASSERT_FALSE(audit(g, h)) << *audit(g, h);
  }
}

TEST(Episode, AuditCatchesTampering) {
  const RootedGraph g = make_path(2);
  auto h = simulate_episode(g, ActivationParams(g, 0.5), 1, *udfs(g), 11);
  ASSERT_FALSE(audit(g, h));
  ASSERT_FALSE(h.stages.empty());
  h.stages.back().active = 0;  // the final move now uses an inactive edge
  EXPECT_TRUE(audit(g, h));
}

TEST(Episode, HistoryStrategy) {
  // Takes any active edge it has not crossed yet, read off the history.
  const RootedGraph g = make_path(3);
  const HistoryStrategy fresh = [&](const History& so_far, int pos, EdgeMask active, double) {
    EdgeMask crossed = 0;
    for (const auto& st : so_far.stages) {
      if (st.edge >= 0) crossed |= edge_bit(st.edge);
    }
    for (int e : g.incident(pos)) {
      if (has_edge(active, e) && !has_edge(crossed, e)) return e;
    }
    return -1;
  };
  const auto h = simulate_episode(g, ActivationParams(g, 1.0), 2, fresh, 5);
  ASSERT_TRUE(h.capture);
  EXPECT_EQ(*h.capture, 3u);
  EXPECT_FALSE(audit(g, h));
}

TEST(MonteCarlo, LineAgainstClosedForm) {
  const RootedGraph g = make_line(3, 2);
  const double p = 0.5;
  const auto r = monte_carlo(g, ActivationParams(g, p), ebd(TreeView(g), p), *udfs(g), 200000, 42, 4);
  const double want = 5 / p + 1 / (1 - (1 - p) * (1 - p)) - 1 / p;
  EXPECT_LE(std::abs(r.mean - want), 3 * r.se);
}

TEST(MonteCarlo, CircleFullActivation) {
  const RootedGraph g = make_circle(4);
  const auto r = monte_carlo(g, ActivationParams(g, 1.0), uniform_density(g), *ues(g), 100000, 1);
  EXPECT_LE(std::abs(r.mean - 2.5), 3 * r.se);
}

TEST(MonteCarlo, JobsDoNotChangeTheResult) {
  const RootedGraph g = make_simple_binary_tree();
  const ActivationParams params(g, 0.4);
  const auto a = monte_carlo(g, params, uniform_density(g), *ucps(g), 30001, 9, 1);
  const auto b = monte_carlo(g, params, uniform_density(g), *ucps(g), 30001, 9, 7);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.se, b.se);
}

TEST(MonteCarlo, SingleEpisode) {
  const RootedGraph g = make_path(2);
  const ActivationParams params(g, 0.5);
  const auto r = monte_carlo(g, params, HiderDistribution::point(g, 1), *udfs(g), 1, 77);
  EXPECT_FALSE(r.se_defined);
  EXPECT_EQ(r.se, 0.0);
  EXPECT_EQ(r.n, 1u);
}

TEST(MonteCarlo, CensoringIsReported) {
  const RootedGraph g = make_line(3, 2);
  EpisodeOptions o;
  o.stage_cap = 3;
  o.record = false;
  const auto r = monte_carlo(g, ActivationParams(g, 0.2), uniform_density(g), *udfs(g), 1000, 5, 2, o);
  EXPECT_TRUE(r.biased());
  EXPECT_GT(r.censored, 0u);
}

TEST(PairwiseSum, Accurate) {
  std::vector<double> x(1 << 20, 0.1);
  EXPECT_NEAR(pairwise_sum(x.data(), x.size()), 0.1 * x.size(), 1e-6);
}
