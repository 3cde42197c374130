#include <gtest/gtest.h>

#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/errors.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/strategies.hpp"

using namespace ssg;

TEST(HittingTimes, SingleEdge) {
  const RootedGraph g = make_path(1);
  for (double p : {0.1, 0.5, 1.0}) {
    const auto ht = policy_hitting_times(g, ActivationParams(g, p), *udfs(g));
    EXPECT_NEAR(ht.edges[0].value, 1 / p, 1e-12);
  }
}

TEST(HittingTimes, LineWithEbd) {
  const RootedGraph g = make_line(3, 2);
  for (double p : {0.2, 0.5, 0.9}) {
    const auto ht = policy_hitting_times(g, ActivationParams(g, p), *udfs(g));
    const double want = 5 / p + 1 / (1 - (1 - p) * (1 - p)) - 1 / p;
    EXPECT_NEAR(*ht.payoff(ebd(TreeView(g), p)), want, 1e-10);
  }
}

TEST(HittingTimes, UesOnTwoPathsOfTwo) {
  const RootedGraph g = make_parallel(std::vector<int>{2, 2});
  const std::vector<int> lam{2, 2};
  const double p = 0.5;
  const auto ht = policy_hitting_times(g, ActivationParams(g, p), *ues(g));
  const double want = (theta_parallel(lam, p) + 1 / p) / 2 + phi(1, p);
  for (const auto& h : ht.edges) EXPECT_NEAR(h.value, want, 1e-12);
}

TEST(HittingTimes, HeterogeneousProbabilities) {
  // two-edge path from the root: geometric waits add up
  const RootedGraph g = make_path(2);
  const auto ht = policy_hitting_times(g, ActivationParams(g, std::vector<double>{0.5, 0.25}), *udfs(g));
  EXPECT_NEAR(ht.edges[0].value, 2.0, 1e-12);
  EXPECT_NEAR(ht.edges[1].value, 6.0, 1e-12);
}

TEST(HittingTimes, StartStateAndVisitedEdges) {
  const RootedGraph g = make_path(2);
  EvalOptions o;
  o.start.position = g.edge(0).other(g.root());
  o.start.visited = edge_bit(0);
  const auto ht = policy_hitting_times(g, ActivationParams(g, 0.5), *udfs(g), g.all_edges(), o);
  EXPECT_EQ(ht.edges[0].status, HitStatus::kAlreadyVisited);
  EXPECT_NEAR(ht.edges[1].value, 2.0, 1e-12);
}

namespace {

// Searcher that goes left and then waits forever.
class Lazy final : public SearcherPolicy {
 public:
  explicit Lazy(int e) : e_(e) {}
  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    if (d.visited == 0 && has_edge(d.active, e_)) {
      out.push_back({e_, d.plan, 1.0});
    } else {
      out.push_back({-1, d.plan, 1.0});
    }
  }
  json descriptor() const override { return {{"kind", "lazy"}}; }

 private:
  int e_;
};

// Moves along an edge that is not active.
class Cheater final : public SearcherPolicy {
 public:
  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    out.push_back({0, d.plan, 1.0});
  }
  json descriptor() const override { return {{"kind", "cheater"}}; }
};

}  // namespace

TEST(HittingTimes, UnreachableEdges) {
  const RootedGraph g = make_tree("(()())");
  const auto ht = policy_hitting_times(g, ActivationParams(g, 0.5), Lazy(0));
  EXPECT_TRUE(ht.edges[0].finite());
  EXPECT_EQ(ht.edges[1].status, HitStatus::kUnreachable);
  EXPECT_FALSE(ht.payoff(uniform_density(g)));
  EXPECT_TRUE(ht.payoff(HiderDistribution::point(g, 0)));
}

TEST(HittingTimes, PartialCoverageIsAnError) {
  // half the time the walk goes to e2 first and then sits there
  const RootedGraph g = make_tree("(()())");
  class Coin final : public SearcherPolicy {
   public:
    void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
      out.clear();
      if (d.visited == 0 && d.active == 3) {
        out.push_back({0, d.plan, 0.5});
        out.push_back({1, d.plan, 0.5});
      } else if (d.visited == 0) {
        out.push_back({-1, d.plan, 1.0});
      } else if (d.visited == 1 && d.position != 0 && has_edge(d.active, 0)) {
        out.push_back({0, d.plan, 1.0});
      } else if (d.visited == 1 && d.position == 0 && has_edge(d.active, 1)) {
        out.push_back({1, d.plan, 1.0});
      } else {
        out.push_back({-1, d.plan, 1.0});
      }
    }
    json descriptor() const override { return {{"kind", "coin"}}; }
  };
  EXPECT_THROW(policy_hitting_times(g, ActivationParams(g, 1.0), Coin()), CoverageError);
}

TEST(HittingTimes, InfeasibleMove) {
  const RootedGraph g = make_path(2);
  EXPECT_THROW(policy_hitting_times(g, ActivationParams(g, 0.5), Cheater()), DomainError);
}

TEST(HittingTimes, StateCap) {
  const RootedGraph g = make_line(3, 2);
  EvalOptions o;
  o.max_states = 3;
  EXPECT_THROW(policy_hitting_times(g, ActivationParams(g, 0.5), *udfs(g), g.all_edges(), o), CapacityError);
}
