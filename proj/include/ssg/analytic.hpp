#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssg/activation.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"

namespace ssg {

// How the branching step of the Λ recursion weights the two child values.
// kTauEdge is the default (it is the one the hitting-time identities need);
// kTauVertex is kept to show how far the other reading is off.
enum class LambdaWeighting { kTauEdge, kTauVertex };

std::string_view to_string(LambdaWeighting w);

struct TreeAnalytics {
  double p = 1.0;
  std::vector<double> tau_vertex;
  std::vector<double> tau_edge;
  // Empty unless the tree is binary and lambda was requested.
  std::vector<double> lambda_vertex;
  std::vector<double> lambda_edge;
  LambdaWeighting weighting = LambdaWeighting::kTauEdge;

  double tau_root(const TreeView& t) const { return tau_vertex[t.root()]; }
  double lambda_root(const TreeView& t) const { return lambda_vertex.at(t.root()); }
  // ½τ(O) + Λ(O): the common hitting time of the equalisation results.
  double equalized_value(const TreeView& t) const {
    return 0.5 * tau_root(t) + lambda_root(t);
  }
};

// Expected round trip of a depth-first search of each subtree. Works on any
// tree (n-ary recursion).
TreeAnalytics cycle_time_tree(const TreeView& tree, double p);

// τ plus the Λ recursion. Binary trees only.
TreeAnalytics lambda(const TreeView& tree, double p,
                     LambdaWeighting weighting = LambdaWeighting::kTauEdge);

// Equal branching density: leaf-edge distribution whose subtree masses are
// proportional to subtree cycle times at every branching vertex.
HiderDistribution ebd(const TreeView& tree, double p);

// 1/(1-(1-p)^k): expected wait for the first of k edges to become active.
double first_of(int k, double p);

struct BranchWeights {
  double first = 0.5;
  double second = 0.5;
  bool clamped = false;
};

BranchWeights bdfs_alpha(double lambda1, double lambda2, double tau1, double tau2, double p);

// BDFS branch probability for the first child edge at every binary branching
// vertex (indexed by vertex; 0.5 elsewhere), plus whether any of them clamped.
struct BdfsWeights {
  std::vector<BranchWeights> at_vertex;
  bool any_clamped = false;
};
BdfsWeights bdfs_weights(const TreeView& tree, double p);

// Largest p (to within `resolution`) at which some α still gets clamped.
// Above it BDFS is a genuine mixture everywhere. nullopt when nothing clamps
// down to p = 1e-4.
std::optional<double> bdfs_clamp_threshold(const TreeView& tree, double resolution = 1e-9);

double phi(int m, double p);
// Cycle time of the parallel Eulerian graph with path lengths λ.
double theta_parallel(std::span<const int> lengths, double p);
// (θ + 1/p)/2 + Φ_m.
double parallel_equalized_value(std::span<const int> lengths, double p);

// The small binary tree O-v with leaves below v2 (make_simple_binary_tree).
double simple_tree_p0();
double simple_tree_zeta(double p);  // clamped to [0,1]
double simple_tree_zeta_raw(double p);
double simple_tree_high_p_value(double p);
double simple_tree_low_p_value(double p);

enum class ClosedFormFamily { kLine, kCircle, kSimpleBinaryTree, kExtremeLine };

struct ClosedForm {
  double value = 0.0;
  std::string formula;
  double p_min = 0.0;  // validity domain (p_min, p_max]
  double p_max = 1.0;
};

ClosedFormFamily parse_closed_form_family(std::string_view name);

// line: params = {λ1, λ2}; circle: {L}; extreme line: {|E|}; simple tree: {}.
ClosedForm closed_form_value(ClosedFormFamily family, std::span<const int> params, double p);

// Closed form for a concrete graph if it is one of the recognised families
// (line rooted inside, path rooted at an end, circle, the simple binary tree,
// or a parallel Eulerian graph under uniform p).
std::optional<ClosedForm> closed_form_for(const RootedGraph& g, double p);

struct ValueBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

ValueBounds deterministic_bounds(const RootedGraph& g);
ValueBounds stochastic_bounds(const RootedGraph& g, const ActivationParams& params);

}  // namespace ssg
