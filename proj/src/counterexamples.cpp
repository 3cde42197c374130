#include "ssg/counterexamples.hpp"

#include <cmath>

#include "ssg/analytic.hpp"
#include "ssg/errors.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

namespace {

int sign(double x, double zero) { return x > zero ? 1 : (x < -zero ? -1 : 0); }

// Σ ε(e)(1 + t_e): the first stage is spent before the evaluated policy starts.
double continuation(const HittingTimes& ht, const std::vector<std::pair<int, double>>& weights) {
  double g = 0.0;
  for (auto [e, w] : weights) {
    if (!ht.edges[e].finite()) throw CoverageError("continuation plan misses an edge");
    g += w * (1.0 + ht.edges[e].value);
  }
  return g;
}

}  // namespace

RootedGraph make_counterexample_tree() {
  return RootedGraph({"O", "a1", "a2", "a3", "a4", "v1", "v2", "v21", "w", "v22"},
                     {{"e1", "O", "a1"},
                      {"e1_2", "a1", "a2"},
                      {"e1_3", "a2", "a3"},
                      {"e1_4", "a3", "a4"},
                      {"e1'", "a4", "v1"},
                      {"e2", "O", "v2"},
                      {"e21", "v2", "v21"},
                      {"e22", "v2", "w"},
                      {"e22'", "w", "v22"}},
                     "O");
}

CounterexampleResult tree_counterexample_check(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("the tree counterexample needs 0 < p < 1");
  const RootedGraph g = make_counterexample_tree();
  const ActivationParams params(g, p);
  const TreeView tree(g);
  const HiderDistribution eps = ebd(tree, p);
  auto E = [&](const char* id) { return g.edge_index(id); };
  const int e1p = E("e1'"), e21 = E("e21");
  const EdgeMask visited = edge_bit(E("e2")) | edge_bit(E("e22")) | edge_bit(E("e22'"));
  const std::vector<std::pair<int, double>> weights{{e1p, eps[e1p]}, {e21, eps[e21]}};
  const Walk down_left{E("e1"), E("e1_2"), E("e1_3"), E("e1_4"), e1p};
  Walk up_left(down_left.rbegin(), down_left.rend());

  // g1: cross e2 in the first stage, then O -> v1 -> O -> v21
  Walk first = down_left;
  first.insert(first.end(), up_left.begin(), up_left.end());
  first.push_back(E("e2"));
  first.push_back(e21);
  const auto ht1 = policy_hitting_times(g, params, *fixed_walk(g, first), edge_bit(e1p) | edge_bit(e21),
                                        {EvalStart{g.root(), visited}});

  // g2: wait out the first stage, then v2 -> v21 -> v2 -> O -> v1
  const int v2 = g.vertex_index("v2");
  Walk second{e21, e21, E("e2")};
  second.insert(second.end(), down_left.begin(), down_left.end());
  const auto ht2 = policy_hitting_times(g, params, *fixed_walk(g, second, v2),
                                        edge_bit(e1p) | edge_bit(e21), {EvalStart{v2, visited}});

  CounterexampleResult r;
  r.p = p;
  r.g1 = continuation(ht1, weights);
  r.g2 = continuation(ht2, weights);
  r.difference = r.g1 - r.g2;
  r.g1_formula = eps[e1p] * (1 + 5 / p) + eps[e21] * (1 + 12 / p);
  r.g2_formula = eps[e21] * (1 + 1 / p) + eps[e1p] * (1 + 8 / p);
  r.reference = 11.0 / 3.0 * (7.0 / p + first_of(2, p)) - 30.0 / p;
  r.sign_agrees = sign(r.difference, 0.0) == sign(r.reference, 0.0);
  return r;
}

CounterexampleResult eulerian_counterexample_check(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
  const std::vector<int> lengths{2, 2, 2, 2};
  const RootedGraph g = make_parallel(lengths);
  const ActivationParams params(g, p);
  // e{i}_1 = {O, v_i}, e{i}_2 = {v_i, D}
  auto E = [&](int i, int j) { return g.edge_index("e" + std::to_string(i) + "_" + std::to_string(j)); };
  const EdgeMask visited = edge_bit(E(4, 1)) | edge_bit(E(4, 2)) | edge_bit(E(1, 2));
  const int v1 = g.vertex_index("v1_1");
  const int D = g.vertex_index("D");
  std::vector<std::pair<int, double>> weights;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!has_edge(visited, e)) weights.emplace_back(e, 0.2);
  }
  const EdgeMask targets = g.all_edges() & ~visited;

  // g1: e11 is inactive, so she waits this stage and carries on with the UES
  const auto ht1 = policy_hitting_times(g, params, *ues(g), targets, {EvalStart{v1, visited}});

  // g2: cross e12 now; at D take the first active of e22/e32 and come back to
  // O; there take the first active of e11 and the other fresh edge; finish the
  // last two edges by the shortest route.
  const int end = 17;
  std::vector<ScriptNode> nodes(18);
  nodes[0].options = {{E(2, 2), 1}, {E(3, 2), 2}};
  nodes[1].options = {{E(2, 1), 3}};
  nodes[2].options = {{E(3, 1), 4}};
  nodes[3].options = {{E(1, 1), 5}, {E(3, 1), 6}};
  nodes[4].options = {{E(1, 1), 7}, {E(2, 1), 8}};
  nodes[5].options = {{E(1, 1), 9}};
  nodes[9].options = {{E(3, 1), 10}};
  nodes[10].options = {{E(3, 2), end}};
  nodes[6].options = {{E(3, 2), 11}};
  nodes[11].options = {{E(1, 2), 12}};
  nodes[12].options = {{E(1, 1), end}};
  nodes[7].options = {{E(1, 1), 13}};
  nodes[13].options = {{E(2, 1), 14}};
  nodes[14].options = {{E(2, 2), end}};
  nodes[8].options = {{E(2, 2), 15}};
  nodes[15].options = {{E(1, 2), 16}};
  nodes[16].options = {{E(1, 1), end}};
  const auto ht2 = policy_hitting_times(g, params, *scripted(g, nodes, "deviation"), targets,
                                        {EvalStart{D, visited}});

  const double A = first_of(2, p);
  CounterexampleResult r;
  r.p = p;
  r.g1 = continuation(ht1, weights);
  r.g2 = continuation(ht2, weights);
  r.difference = r.g2 - r.g1;
  r.g1_formula = (5 + 11 / p + 4 * A) / 5;
  r.g2_formula = (5 + 17 / (2 * p) + 8 * A) / 5;
  r.reference = 5 * p - 2;
  r.sign_agrees = sign(r.difference, 1e-12) == sign(r.reference, 1e-12);
  return r;
}

}  // namespace ssg
