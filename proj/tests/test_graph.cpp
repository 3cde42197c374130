#include <gtest/gtest.h>

#include <algorithm>

#include "ssg/errors.hpp"
#include "ssg/graph.hpp"

using namespace ssg;

namespace {

RootedGraph two_edges() { return make_tree("(()())"); }

}  // namespace

TEST(Graph, RejectsSelfLoopsAndDisconnected) {
  EXPECT_THROW(RootedGraph({"O"}, {{"a", "O", "O"}}, "O"), DomainError);
  EXPECT_THROW(RootedGraph({"O", "a", "b", "c"}, {{"e", "O", "a"}, {"f", "b", "c"}}, "O"), DomainError);
  EXPECT_THROW(RootedGraph({"O", "a"}, {{"e", "O", "a"}, {"e", "O", "a"}}, "O"), DomainError);
  EXPECT_THROW(RootedGraph({"O", "a"}, {{"e", "O", "a"}}, "X"), DomainError);
}

TEST(Graph, ParallelEdgesAllowed) {
  RootedGraph g({"O", "D"}, {{"a", "O", "D"}, {"b", "D", "O"}}, "O");
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.degree(0), 2);
  EXPECT_EQ(classify(g), GraphClass::kEulerian);
}

TEST(Graph, Neighbors) {
  const RootedGraph line = make_line(3, 2);
  const int O = line.root();
  EXPECT_EQ(neighbors(line, 0, O), std::vector<int>{O});

  const int l1 = line.vertex_index("L1");
  const auto all = neighbors(line, line.all_edges(), l1);
  EXPECT_EQ(all.size(), 3u);
  EXPECT_TRUE(std::find(all.begin(), all.end(), O) != all.end());
  EXPECT_TRUE(std::find(all.begin(), all.end(), line.vertex_index("L2")) != all.end());

  const RootedGraph g = two_edges();
  const int e2 = g.edge_index("e2");
  const auto n = neighbors(g, edge_bit(e2), g.root());
  EXPECT_EQ(n, (std::vector<int>{g.root(), g.vertex_index("v2")}));
}

TEST(Graph, Classify) {
  EXPECT_EQ(classify(make_line(3, 2)), GraphClass::kTree);
  EXPECT_EQ(classify(make_circle(5)), GraphClass::kEulerian);
  EXPECT_EQ(classify(make_parallel(std::vector<int>{1, 1, 1})), GraphClass::kOther);
  EXPECT_EQ(to_string(GraphClass::kEulerian), "eulerian");
}

TEST(Graph, ChinesePostman) {
  const auto single = chinese_postman_tours(make_path(1));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].size(), 2u);

  const auto two = chinese_postman_tours(two_edges());
  ASSERT_EQ(two.size(), 2u);
  for (const auto& w : two) EXPECT_EQ(w.size(), 4u);

  const auto c4 = chinese_postman_tours(make_circle(4));
  ASSERT_EQ(c4.size(), 2u);
  EXPECT_EQ(c4[0].size(), 4u);

  EXPECT_EQ(chinese_postman_length(make_line(3, 2)), 10);
  EXPECT_EQ(chinese_postman_length(make_parallel(std::vector<int>{1, 1, 1})), 4);
}

TEST(Graph, EulerianCycles) {
  EXPECT_EQ(eulerian_cycles(make_circle(3)).size(), 2u);
  EXPECT_EQ(eulerian_cycles(make_parallel(std::vector<int>{1, 1})).size(), 2u);
  EXPECT_EQ(eulerian_cycles(make_parallel(std::vector<int>{1, 1, 1, 1})).size(), 24u);
  EXPECT_THROW(eulerian_cycles(make_line(1, 1)), DomainError);
}

TEST(Generators, Families) {
  const RootedGraph line = make_line(3, 2);
  EXPECT_EQ(line.num_edges(), 5);
  EXPECT_EQ(line.degree(line.root()), 2);

  const RootedGraph t = make_simple_binary_tree();
  EXPECT_EQ(t.num_edges(), 4);
  const TreeView tv(t);
  EXPECT_EQ(tv.leaf_edges(), edge_bit(t.edge_index("e1")) | edge_bit(t.edge_index("e21")) |
                                 edge_bit(t.edge_index("e22")));
  EXPECT_TRUE(tv.is_binary());

  const RootedGraph c = make_circle(4);
  EXPECT_EQ(classify(c), GraphClass::kEulerian);
  for (int v = 0; v < c.num_vertices(); ++v) EXPECT_EQ(c.degree(v), 2);
}

TEST(Generators, SpecsRoundTripThroughClassify) {
  EXPECT_EQ(classify(generate("line:3,2")), GraphClass::kTree);
  EXPECT_EQ(classify(generate("circle:5")), GraphClass::kEulerian);
  EXPECT_EQ(classify(generate("parallel:1,2,3,4")), GraphClass::kEulerian);
  EXPECT_EQ(classify(generate("parallel:1,1,1")), GraphClass::kOther);
  EXPECT_EQ(classify(generate("simple-binary-tree")), GraphClass::kTree);
  EXPECT_EQ(classify(generate("tree:(()(()()))")), GraphClass::kTree);
  EXPECT_THROW(generate("hexagon:3"), DomainError);
}

TEST(Generators, NestedShape) {
  const RootedGraph g = make_tree("(()(()()))");
  EXPECT_EQ(g.num_edges(), 4);
  EXPECT_TRUE(TreeView(g).is_binary());
  EXPECT_EQ(make_tree("((((()))))").num_edges(), 4);
}

TEST(TreeView, Orientation) {
  const RootedGraph g = make_simple_binary_tree();
  const TreeView t(g);
  const int e2 = g.edge_index("e2");
  EXPECT_EQ(t.tail(e2), g.root());
  EXPECT_EQ(t.parent_edge(t.head(e2)), e2);
  // E_e = {e} plus everything below head(e)
  EXPECT_EQ(t.edge_subtree(e2), edge_bit(e2) | t.subtree_edges(t.head(e2)));
  EXPECT_EQ(t.children(t.head(e2)).size(), 2u);
  EXPECT_THROW(TreeView(make_circle(3)), DomainError);
}

TEST(Parallel, Structure) {
  const auto d = parallel_structure(make_parallel(std::vector<int>{2, 3}));
  ASSERT_TRUE(d);
  auto lens = d->lengths;
  std::sort(lens.begin(), lens.end());
  EXPECT_EQ(lens, (std::vector<int>{2, 3}));
  const auto c = parallel_structure(make_circle(5));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->lengths[0] + c->lengths[1], 5);
  EXPECT_FALSE(parallel_structure(make_line(2, 2)));
}
