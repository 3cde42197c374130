#pragma once

#include <cstddef>
#include <vector>

#include "ssg/activation.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

inline constexpr int kMaxSupport = 16;

// Searcher's optimal reply to a fixed hider distribution, from the dynamic
// program over (position, edges of the support not yet searched).
//
// Internally U(v, I) = ε(I)·W(v, I) is stored; W is the expected number of
// further stages given that the hider is somewhere in I.
class BestResponse {
 public:
  double value() const;  // W(root, whole support)
  double W(int v, EdgeMask remaining) const;
  // Bellman residual max |T W − W| over all belief states (W scale).
  double residual() const { return residual_; }
  PolicyPtr policy() const { return policy_; }
  EdgeMask support() const { return support_; }
  const std::vector<int>& support_edges() const { return support_edges_; }
  std::size_t belief_states() const { return U_.size(); }

 private:
  friend BestResponse best_response_value(const RootedGraph&, const ActivationParams&,
                                          const HiderDistribution&);
  friend struct BestResponseAccess;

  int root_ = 0;
  int num_vertices_ = 0;
  EdgeMask support_ = 0;
  std::vector<int> support_edges_;
  std::vector<double> mass_;  // ε(I) by compressed subset index
  std::vector<double> U_;     // [subset * V + v]
  std::vector<int> rank_;     // settle order inside each layer
  double residual_ = 0.0;
  PolicyPtr policy_;
};

// Exact solve by label setting: belief layers in order of size, and inside a
// layer a Dijkstra-like sweep (a vertex's value only depends on options that
// are strictly better than waiting). Throws CapacityError for supports above
// kMaxSupport edges.
BestResponse best_response_value(const RootedGraph& g, const ActivationParams& params,
                                 const HiderDistribution& eps);

struct ValueIterationReport {
  double value = 0.0;          // W(root, support)
  double residual = 0.0;       // last sweep's sup-norm change, W scale
  double max_difference = 0.0; // against the label-setting solution
  std::size_t sweeps = 0;
  bool monotone = true;        // iterates never decreased
};

// Plain monotone value iteration from 0 (layer by layer), as a cross-check.
// Throws ConvergenceError if `max_sweeps` is hit before the change drops
// below tol.
ValueIterationReport value_iteration(const RootedGraph& g, const ActivationParams& params,
                                     const HiderDistribution& eps, double tol,
                                     std::size_t max_sweeps = 2'000'000);

}  // namespace ssg
