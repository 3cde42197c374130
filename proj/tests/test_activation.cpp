#include <gtest/gtest.h>

#include <cmath>

#include "ssg/activation.hpp"
#include "ssg/distribution.hpp"
#include "ssg/errors.hpp"

using namespace ssg;

TEST(Activation, FullActivationDrawsEverything) {
  const RootedGraph g = make_circle(5);
  const ActivationParams params(g, 1.0);
  const ActivationStream rng(7);
  for (std::uint64_t t = 0; t < 100; ++t) EXPECT_EQ(sample_active_set(params, rng, t), g.all_edges());
}

TEST(Activation, FrequencyAndDeterminism) {
  const RootedGraph g = make_circle(4);
  const ActivationParams params(g, 0.5);
  const ActivationStream a(123), b(123);
  std::vector<int> hits(4, 0);
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const EdgeMask m = sample_active_set(params, a, t);
    EXPECT_EQ(m, sample_active_set(params, b, t));
    for (int e = 0; e < 4; ++e) hits[e] += has_edge(m, e);
  }
  for (int e = 0; e < 4; ++e) EXPECT_NEAR(hits[e] / double(n), 0.5, 0.01);
}

TEST(Activation, RejectsBadProbabilities) {
  const RootedGraph g = make_path(2);
  EXPECT_THROW(ActivationParams(g, 0.0), DomainError);
  EXPECT_THROW(ActivationParams(g, 1.5), DomainError);
  EXPECT_THROW(ActivationParams(g, std::vector<double>{0.5}), DomainError);
}

TEST(IncidentPatterns, DegreeOne) {
  const RootedGraph g = make_path(1);
  const auto d = incident_pattern_distribution(g, ActivationParams(g, 0.3), g.root(), g.all_edges());
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].active, 0u);
  EXPECT_NEAR(d[0].probability, 0.7, 1e-15);
  EXPECT_NEAR(d[1].probability, 0.3, 1e-15);
}

TEST(IncidentPatterns, DegreeTwo) {
  const RootedGraph g = make_tree("(()())");
  const auto half = incident_pattern_distribution(g, ActivationParams(g, 0.5), g.root(), g.all_edges());
  ASSERT_EQ(half.size(), 4u);
  for (const auto& pat : half) EXPECT_NEAR(pat.probability, 0.25, 1e-15);

  const auto d = incident_pattern_distribution(g, ActivationParams(g, 0.2), g.root(), g.all_edges());
  double some = 0.0;
  for (const auto& pat : d) some += pat.active ? pat.probability : 0.0;
  EXPECT_NEAR(some, 0.36, 1e-15);
}

TEST(IncidentPatterns, RestrictionMarginalises) {
  const RootedGraph g = make_tree("(()())");
  const auto d = incident_pattern_distribution(g, ActivationParams(g, 0.2), g.root(), edge_bit(0));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[1].probability, 0.2, 1e-15);
}

TEST(IncidentPatterns, CertainEdgesCollapse) {
  const RootedGraph g = make_tree("(()()())");
  const auto d = incident_pattern_distribution(g, ActivationParams(g, 1.0), g.root(), g.all_edges());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].active, g.all_edges());
}

TEST(Distribution, UniformAndValidation) {
  const RootedGraph g = make_circle(4);
  const auto u = uniform_density(g);
  for (int e = 0; e < 4; ++e) EXPECT_DOUBLE_EQ(u[e], 0.25);
  EXPECT_EQ(u.support(), g.all_edges());
  EXPECT_THROW(HiderDistribution(g, {0, 0, 0, 0}), DomainError);
  EXPECT_THROW(HiderDistribution(g, {1, -1, 0, 1}), DomainError);
  const HiderDistribution h(g, {2, 0, 1, 1});
  EXPECT_DOUBLE_EQ(h[0], 0.5);
  EXPECT_EQ(h.support(), EdgeMask{0b1101});
}
