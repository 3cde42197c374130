#include "ssg/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
}

// Children first.
std::vector<int> postorder(const TreeView& t) {
  auto order = t.preorder();
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

std::string_view to_string(LambdaWeighting w) {
  return w == LambdaWeighting::kTauEdge ? "tau_edge" : "tau_vertex";
}

double first_of(int k, double p) { return 1.0 / (1.0 - std::pow(1.0 - p, k)); }

TreeAnalytics cycle_time_tree(const TreeView& tree, double p) {
  check_p(p);
  const RootedGraph& g = tree.graph();
  TreeAnalytics out;
  out.p = p;
  out.tau_vertex.assign(g.num_vertices(), 0.0);
  out.tau_edge.assign(g.num_edges(), 0.0);
  for (int v : postorder(tree)) {
    const auto kids = tree.children(v);
    const int n = static_cast<int>(kids.size());
    double tau = n / p;  // the n climbs back up
    for (int k = 1; k <= n; ++k) tau += first_of(k, p);
    for (int e : kids) tau += out.tau_vertex[tree.head(e)];
    out.tau_vertex[v] = tau;
    for (int e : kids) out.tau_edge[e] = out.tau_vertex[tree.head(e)] + 2.0 / p;
  }
  return out;
}

TreeAnalytics lambda(const TreeView& tree, double p, LambdaWeighting weighting) {
  if (!tree.is_binary()) throw DomainError("the lambda recursion needs a binary tree");
  TreeAnalytics out = cycle_time_tree(tree, p);
  out.weighting = weighting;
  const RootedGraph& g = tree.graph();
  out.lambda_vertex.assign(g.num_vertices(), 0.0);
  out.lambda_edge.assign(g.num_edges(), 0.0);
  const double branch_term = 0.5 * (first_of(2, p) - 1.0 / p);
  for (int v : postorder(tree)) {
    const auto kids = tree.children(v);
    for (int e : kids) out.lambda_edge[e] = out.lambda_vertex[tree.head(e)];
    if (kids.size() == 1) {
      out.lambda_vertex[v] = out.lambda_edge[kids[0]];
    } else if (kids.size() == 2) {
      double w1, w2;
      if (weighting == LambdaWeighting::kTauEdge) {
        w1 = out.tau_edge[kids[0]];
        w2 = out.tau_edge[kids[1]];
      } else {
        w1 = out.tau_vertex[tree.head(kids[0])];
        w2 = out.tau_vertex[tree.head(kids[1])];
      }
      const double l1 = out.lambda_edge[kids[0]];
      const double l2 = out.lambda_edge[kids[1]];
      // two leaf children under tau_vertex weighting: 0/0, both Λ are 0 anyway
      const double mixed = (w1 + w2) > 0.0 ? (w1 * l1 + w2 * l2) / (w1 + w2) : 0.5 * (l1 + l2);
      out.lambda_vertex[v] = mixed + branch_term;
    }
  }
  return out;
}

HiderDistribution ebd(const TreeView& tree, double p) {
  const TreeAnalytics a = cycle_time_tree(tree, p);
  const RootedGraph& g = tree.graph();
  std::vector<double> vertex_mass(g.num_vertices(), 0.0);
  std::vector<double> edge_mass(g.num_edges(), 0.0);
  vertex_mass[tree.root()] = 1.0;
  for (int v : tree.preorder()) {
    const auto kids = tree.children(v);
    double total = 0.0;
    for (int e : kids) total += a.tau_edge[e];
    for (int e : kids) {
      const double share = vertex_mass[v] * a.tau_edge[e] / total;
      if (tree.is_leaf_edge(e)) {
        edge_mass[e] = share;
      } else {
        vertex_mass[tree.head(e)] = share;
      }
    }
  }
  return HiderDistribution(g, std::move(edge_mass));
}

BranchWeights bdfs_alpha(double lambda1, double lambda2, double tau1, double tau2, double p) {
  if (!(tau1 > 0.0 && tau2 > 0.0)) throw DomainError("cycle times must be positive");
  check_p(p);
  const double q = 1.0 - p;
  const double raw = 0.5 + (lambda1 - lambda2) / (tau1 + tau2) * (1.0 - q * q) / (p * p);
  BranchWeights w;
  w.first = std::clamp(raw, 0.0, 1.0);
  w.second = 1.0 - w.first;
  w.clamped = raw != w.first;
  return w;
}

BdfsWeights bdfs_weights(const TreeView& tree, double p) {
  const TreeAnalytics a = lambda(tree, p);
  BdfsWeights out;
  out.at_vertex.assign(tree.graph().num_vertices(), BranchWeights{});
  for (int v : tree.preorder()) {
    const auto kids = tree.children(v);
    if (kids.size() != 2) continue;
    out.at_vertex[v] = bdfs_alpha(a.lambda_edge[kids[0]], a.lambda_edge[kids[1]],
                                  a.tau_edge[kids[0]], a.tau_edge[kids[1]], p);
    out.any_clamped = out.any_clamped || out.at_vertex[v].clamped;
  }
  return out;
}

std::optional<double> bdfs_clamp_threshold(const TreeView& tree, double resolution) {
  auto clamped = [&](double p) { return bdfs_weights(tree, p).any_clamped; };
  // coarse scan from the top, geometric below 1e-2 so tiny thresholds are found
  double hi = 1.0;
  double lo = -1.0;
  for (double p = 1.0; p >= 1e-4; p = p > 1e-2 ? p - 1e-3 : p * 0.9) {
    if (clamped(p)) {
      lo = p;
      break;
    }
    hi = p;
  }
  if (lo < 0.0) return std::nullopt;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (clamped(mid) ? lo : hi) = mid;
  }
  return lo;
}

double phi(int m, double p) {
  if (m < 1) throw DomainError("phi needs m >= 1");
  check_p(p);
  const double q = 1.0 - p;
  double value = 0.5 * (first_of(2, p) - 1.0 / p);
  for (int j = 2; j <= m; ++j) {
    double waits = 1.0 / p;
    for (int k = 1; k <= 2 * (j - 1); ++k) waits += first_of(k, p);
    value = 0.5 / (1.0 - std::pow(q, 2 * j)) + (0.5 - 0.5 / j) / (1.0 - std::pow(q, 2 * j - 1)) -
            waits / (2.0 * j) + (j - 1.0) / j * value;
  }
  return value;
}

double theta_parallel(std::span<const int> lengths, double p) {
  check_p(p);
  if (lengths.empty() || lengths.size() % 2 != 0) {
    throw DomainError("theta needs an even number of parallel paths");
  }
  // only the multiset of lengths matters: the waits and the walking separate
  double theta = 0.0;
  for (std::size_t k = 1; k <= lengths.size(); ++k) {
    if (lengths[k - 1] < 1) throw DomainError("path lengths must be >= 1");
    theta += first_of(static_cast<int>(k), p) + (lengths[k - 1] - 1) / p;
  }
  return theta;
}

double parallel_equalized_value(std::span<const int> lengths, double p) {
  const int m = static_cast<int>(lengths.size()) / 2;
  return 0.5 * (theta_parallel(lengths, p) + 1.0 / p) + phi(m, p);
}

double simple_tree_p0() { return (9.0 - std::sqrt(65.0)) / 8.0; }

double simple_tree_zeta_raw(double p) {
  const double num = 8.0 * (2.0 - p) - (1.0 - p) * (1.0 + p) * (2.0 - p);
  const double den = 8.0 * (2.0 - p) * (1.0 - p) - p * (1.0 - p) * (1.0 - p);
  return num / den;
}

double simple_tree_zeta(double p) {
  check_p(p);
  if (p == 1.0) return 1.0;
  return std::clamp(simple_tree_zeta_raw(p), 0.0, 1.0);
}

double simple_tree_high_p_value(double p) {
  check_p(p);
  return (92.0 - 75.0 * p + 15.0 * p * p) / (p * (15.0 - 7.0 * p) * (2.0 - p));
}

double simple_tree_low_p_value(double p) {
  check_p(p);
  return (37.0 - 33.0 * p + 7.0 * p * p) / (3.0 * p * (2.0 - p) * (2.0 - p));
}

ClosedFormFamily parse_closed_form_family(std::string_view name) {
  if (name == "line") return ClosedFormFamily::kLine;
  if (name == "circle") return ClosedFormFamily::kCircle;
  if (name == "simple-binary-tree") return ClosedFormFamily::kSimpleBinaryTree;
  if (name == "extreme-line" || name == "rooted-at-extreme-line" || name == "path") {
    return ClosedFormFamily::kExtremeLine;
  }
  throw DomainError("no closed form for family '" + std::string(name) + "'");
}

ClosedForm closed_form_value(ClosedFormFamily family, std::span<const int> params, double p) {
  check_p(p);
  ClosedForm out;
  switch (family) {
    case ClosedFormFamily::kLine: {
      if (params.size() != 2 || params[0] < 1 || params[1] < 1) {
        throw DomainError("line closed form needs two lengths >= 1");
      }
      const double L = params[0] + params[1];
      out.value = L / p + first_of(2, p) - 1.0 / p;
      out.formula = "L/p + 1/(1-(1-p)^2) - 1/p";
      break;
    }
    case ClosedFormFamily::kCircle: {
      if (params.size() != 1 || params[0] < 2) throw DomainError("circle closed form needs L >= 2");
      out.value = first_of(2, p) + (params[0] - 1) / (2.0 * p);
      out.formula = "1/(1-(1-p)^2) + (L-1)/(2p)";
      break;
    }
    case ClosedFormFamily::kExtremeLine: {
      if (params.size() != 1 || params[0] < 1) throw DomainError("path closed form needs |E| >= 1");
      out.value = params[0] / p;
      out.formula = "|E|/p";
      break;
    }
    case ClosedFormFamily::kSimpleBinaryTree: {
      const double p0 = simple_tree_p0();
      if (p >= p0) {
        out.value = simple_tree_high_p_value(p);
        out.formula = "(92-75p+15p^2)/(p(15-7p)(2-p))";
        out.p_min = p0;
      } else {
        out.value = simple_tree_low_p_value(p);
        out.formula = "(37-33p+7p^2)/(3p(2-p)^2)";
        out.p_max = p0;
      }
      break;
    }
  }
  return out;
}

namespace {

bool is_simple_binary_tree(const TreeView& t) {
  const RootedGraph& g = t.graph();
  if (g.num_edges() != 4) return false;
  const auto top = t.children(t.root());
  if (top.size() != 2) return false;
  for (int i = 0; i < 2; ++i) {
    const int leaf = top[i];
    const int other = top[1 - i];
    if (!t.is_leaf_edge(leaf)) continue;
    const auto below = t.children(t.head(other));
    if (below.size() == 2 && t.is_leaf_edge(below[0]) && t.is_leaf_edge(below[1])) return true;
  }
  return false;
}

}  // namespace

std::optional<ClosedForm> closed_form_for(const RootedGraph& g, double p) {
  const GraphClass cls = classify(g);
  int maxdeg = g.max_degree();
  if (cls == GraphClass::kTree) {
    const TreeView t(g);
    if (maxdeg <= 2) {
      const auto top = t.children(t.root());
      if (top.size() == 1) {
        const int n = g.num_edges();
        return closed_form_value(ClosedFormFamily::kExtremeLine, std::span(&n, 1), p);
      }
      const int lens[2] = {std::popcount(t.edge_subtree(top[0])),
                           std::popcount(t.edge_subtree(top[1]))};
      return closed_form_value(ClosedFormFamily::kLine, lens, p);
    }
    if (is_simple_binary_tree(t)) return closed_form_value(ClosedFormFamily::kSimpleBinaryTree, {}, p);
    return std::nullopt;
  }
  // circles, including two parallel paths between O and D
  const auto par = parallel_structure(g);
  if (par && par->lengths.size() == 2 && par->origin == g.root()) {
    const int L = g.num_edges();
    return closed_form_value(ClosedFormFamily::kCircle, std::span(&L, 1), p);
  }
  return std::nullopt;
}

ValueBounds deterministic_bounds(const RootedGraph& g) {
  const double n = g.num_edges();
  const GraphClass cls = classify(g);
  if (cls == GraphClass::kTree) return {n, n, true};
  if (cls == GraphClass::kEulerian && g.num_edges() > 1) {
    return {(n + 1.0) / 2.0, (n + 1.0) / 2.0, true};
  }
  return {(n + 1.0) / 2.0, n, false};
}

ValueBounds stochastic_bounds(const RootedGraph& g, const ActivationParams& params) {
  const ValueBounds det = deterministic_bounds(g);
  const double pmin = params.min();
  const int delta = g.max_degree();
  ValueBounds out;
  out.lower = det.lower * first_of(delta, pmin);
  out.upper = det.upper / pmin;
  out.exact = det.exact && pmin == 1.0;
  return out;
}

}  // namespace ssg
