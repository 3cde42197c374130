#include <gtest/gtest.h>

#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/errors.hpp"

using namespace ssg;

namespace {
double q2(double p) { return 1.0 / (1.0 - (1.0 - p) * (1.0 - p)); }
}  // namespace

TEST(CycleTime, SingleEdge) {
  const RootedGraph g = make_path(1);
  const TreeView t(g);
  EXPECT_DOUBLE_EQ(cycle_time_tree(t, 0.3).tau_root(t), 2 / 0.3);
  EXPECT_DOUBLE_EQ(cycle_time_tree(t, 1.0).tau_root(t), 2.0);
}

TEST(CycleTime, TwoEdgeStar) {
  const RootedGraph g = make_tree("(()())");
  const TreeView t(g);
  EXPECT_NEAR(cycle_time_tree(t, 0.5).tau_root(t), 22.0 / 3.0, 1e-12);
}

TEST(CycleTime, FullActivationIsTwiceTheEdges) {
  for (const char* shape : {"(()(()()))", "((()()())(()))", "(((())))"}) {
    const RootedGraph g = make_tree(shape);
    const TreeView t(g);
    EXPECT_NEAR(cycle_time_tree(t, 1.0).tau_root(t), 2.0 * g.num_edges(), 1e-12) << shape;
  }
}

TEST(CycleTime, EdgeIdentities) {
  const RootedGraph g = make_simple_binary_tree();
  const TreeView t(g);
  const double p = 0.37;
  const auto a = cycle_time_tree(t, p);
  for (int e = 0; e < g.num_edges(); ++e) {
    EXPECT_NEAR(a.tau_edge[e], a.tau_vertex[t.head(e)] + 2 / p, 1e-12);
    if (t.is_leaf_edge(e)) EXPECT_NEAR(a.tau_edge[e], 2 / p, 1e-12);
  }
}

TEST(Lambda, TwoEdgeStarAndLine) {
  for (double p : {0.2, 0.5, 1.0}) {
    const RootedGraph star = make_tree("(()())");
    const TreeView t(star);
    EXPECT_NEAR(lambda(t, p).lambda_root(t), 0.5 * (q2(p) - 1 / p), 1e-12);

    const RootedGraph line = make_line(3, 2);
    const TreeView tl(line);
    const auto a = lambda(tl, p);
    EXPECT_NEAR(a.lambda_root(tl), 0.5 * (q2(p) - 1 / p), 1e-12);
    EXPECT_NEAR(a.equalized_value(tl), 5 / p + q2(p) - 1 / p, 1e-12);
  }
}

TEST(Lambda, LeafEdgesAreZero) {
  const RootedGraph g = make_simple_binary_tree();
  const TreeView t(g);
  const auto a = lambda(t, 0.4);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (t.is_leaf_edge(e)) EXPECT_EQ(a.lambda_edge[e], 0.0);
  }
}

TEST(Lambda, SimpleTreeMatchesHighPFormula) {
  const RootedGraph g = make_simple_binary_tree();
  const TreeView t(g);
  EXPECT_NEAR(lambda(t, 0.5).equalized_value(t), 58.25 / 8.625, 1e-12);
}

TEST(Lambda, NeedsBinaryTree) {
  const RootedGraph g = make_tree("(()()())");
  EXPECT_THROW(lambda(TreeView(g), 0.5), DomainError);
}

TEST(Ebd, LineAndSingleEdge) {
  const RootedGraph line = make_line(3, 2);
  const auto d = ebd(TreeView(line), 0.4);
  EXPECT_NEAR(d[line.edge_index("l3")], 0.6, 1e-12);
  EXPECT_NEAR(d[line.edge_index("r2")], 0.4, 1e-12);
  EXPECT_EQ(d[line.edge_index("l1")], 0.0);

  const RootedGraph one = make_path(1);
  EXPECT_EQ(ebd(TreeView(one), 0.3)[0], 1.0);
}

TEST(Ebd, BranchRatios) {
  const RootedGraph g = make_simple_binary_tree();
  const TreeView t(g);
  const double p = 0.4;
  const auto d = ebd(t, p);
  const auto a = cycle_time_tree(t, p);
  const int e1 = g.edge_index("e1"), e2 = g.edge_index("e2");
  const int e21 = g.edge_index("e21"), e22 = g.edge_index("e22");
  EXPECT_NEAR(d[e1] / a.tau_edge[e1], (d[e21] + d[e22]) / a.tau_edge[e2], 1e-12);
  EXPECT_NEAR(d[e21], d[e22], 1e-12);
}

TEST(Bdfs, Alpha) {
  const auto sym = bdfs_alpha(1.3, 1.3, 4, 7, 0.4);
  EXPECT_DOUBLE_EQ(sym.first, 0.5);
  EXPECT_FALSE(sym.clamped);

  const auto det = bdfs_alpha(0.5, -0.25, 6, 4, 1.0);
  EXPECT_NEAR(det.first, 0.5 + 0.75 / 10, 1e-15);
  EXPECT_NEAR(det.first + det.second, 1.0, 1e-15);

  const auto big = bdfs_alpha(1e6, 0, 1, 1, 0.5);
  EXPECT_TRUE(big.clamped);
  EXPECT_EQ(big.first, 1.0);
  EXPECT_EQ(big.second, 0.0);
}

TEST(Bdfs, LineIsUniform) {
  const RootedGraph g = make_line(3, 2);
  const auto w = bdfs_weights(TreeView(g), 0.3);
  EXPECT_FALSE(w.any_clamped);
  EXPECT_DOUBLE_EQ(w.at_vertex[g.root()].first, 0.5);
}

TEST(Parallel, Phi) {
  EXPECT_NEAR(phi(1, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(phi(2, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(phi(3, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(phi(1, 0.5), -1.0 / 3.0, 1e-15);
}

TEST(Parallel, Theta) {
  const std::vector<int> one{1, 1}, two{2, 2}, four{1, 1, 1, 1};
  EXPECT_NEAR(theta_parallel(one, 1.0), 2.0, 1e-15);
  // 2 + 4/3 for the two path starts, plus 1/0.5 of interior crossing each
  EXPECT_NEAR(theta_parallel(two, 0.5), 22.0 / 3.0, 1e-12);
  EXPECT_NEAR(theta_parallel(four, 1.0), 4.0, 1e-15);
  EXPECT_THROW(theta_parallel(std::vector<int>{1, 1, 1}, 0.5), DomainError);
}

TEST(Parallel, CircleIsTwoPaths) {
  for (int L : {3, 4, 5, 8}) {
    for (double p : {0.2, 0.7, 1.0}) {
      const std::vector<int> lam{L / 2, L - L / 2};
      EXPECT_NEAR(parallel_equalized_value(lam, p), q2(p) + (L - 1) / (2 * p), 1e-12);
    }
  }
}

TEST(SimpleTree, RegimesAndZeta) {
  const double p0 = simple_tree_p0();
  EXPECT_NEAR(p0, (9 - std::sqrt(65.0)) / 8, 1e-15);
  EXPECT_NEAR(simple_tree_high_p_value(p0), simple_tree_low_p_value(p0), 1e-9);
  EXPECT_EQ(simple_tree_high_p_value(1.0), 4.0);
  EXPECT_NEAR(simple_tree_zeta_raw(1e-9), 7.0 / 8.0, 1e-8);
  for (double p : {0.01, 0.05, 0.1, p0}) {
    EXPECT_GE(simple_tree_zeta(p), 0.0);
    EXPECT_LE(simple_tree_zeta(p), 1.0);
  }
}

TEST(ClosedForms, Values) {
  const int line[] = {3, 2};
  EXPECT_DOUBLE_EQ(closed_form_value(ClosedFormFamily::kLine, line, 1.0).value, 5.0);
  EXPECT_NEAR(closed_form_value(ClosedFormFamily::kLine, line, 0.5).value, 28.0 / 3.0, 1e-12);
  const int circle[] = {4};
  EXPECT_DOUBLE_EQ(closed_form_value(ClosedFormFamily::kCircle, circle, 1.0).value, 2.5);
  const int ext[] = {5};
  EXPECT_DOUBLE_EQ(closed_form_value(ClosedFormFamily::kExtremeLine, ext, 0.5).value, 10.0);
  EXPECT_NEAR(closed_form_value(ClosedFormFamily::kSimpleBinaryTree, {}, 0.1).value,
              simple_tree_low_p_value(0.1), 1e-15);
  EXPECT_EQ(parse_closed_form_family("circle"), ClosedFormFamily::kCircle);
}

TEST(ClosedForms, Recognition) {
  EXPECT_TRUE(closed_form_for(make_line(3, 2), 0.5));
  EXPECT_TRUE(closed_form_for(make_circle(6), 0.5));
  EXPECT_TRUE(closed_form_for(make_simple_binary_tree(), 0.5));
  EXPECT_TRUE(closed_form_for(make_path(4), 0.5));
  EXPECT_FALSE(closed_form_for(make_parallel(std::vector<int>{1, 1, 1}), 0.5));
}

TEST(Bounds, Deterministic) {
  const auto tree = deterministic_bounds(make_tree("(()(()()))"));
  EXPECT_EQ(tree.lower, 4.0);
  EXPECT_EQ(tree.upper, 4.0);
  const auto c5 = deterministic_bounds(make_circle(5));
  EXPECT_EQ(c5.lower, 3.0);
  EXPECT_EQ(c5.upper, 3.0);
  // five edges, neither a tree nor Eulerian
  const RootedGraph g({"O", "a", "b"}, {{"x", "O", "a"}, {"y", "a", "b"}, {"z", "b", "O"}, {"w", "O", "a"}, {"u", "a", "b"}},
                      "O");
  ASSERT_EQ(classify(g), GraphClass::kOther);
  const auto other = deterministic_bounds(g);
  EXPECT_EQ(other.lower, 3.0);
  EXPECT_EQ(other.upper, 5.0);
}

TEST(Bounds, Stochastic) {
  const RootedGraph t = make_tree("(()(()()))");
  const auto b = stochastic_bounds(t, ActivationParams(t, 1.0));
  EXPECT_EQ(b.lower, 4.0);
  EXPECT_EQ(b.upper, 4.0);
  const RootedGraph c = make_circle(4);
  const auto s = stochastic_bounds(c, ActivationParams(c, 0.5));
  EXPECT_NEAR(s.lower, 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.upper, 5.0, 1e-12);
  const double v = q2(0.5) + 1.5 / 0.5;
  EXPECT_GT(v, s.lower);
  EXPECT_LT(v, s.upper);
  const auto near1 = stochastic_bounds(c, ActivationParams(c, 0.9999));
  EXPECT_LT(near1.upper - near1.lower, 1e-3);
}
