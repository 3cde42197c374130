#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ssg/activation.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

enum class HitStatus {
  kFinite,
  kUnreachable,     // the policy never traverses the edge (infinite time)
  kAlreadyVisited,  // edge was in the starting visited set; not a target
};

struct HittingTime {
  HitStatus status = HitStatus::kFinite;
  double value = 0.0;  // meaningful only when finite

  bool finite() const { return status == HitStatus::kFinite; }
};

// Where the chain starts. position -1 means the root.
struct EvalStart {
  int position = -1;
  EdgeMask visited = 0;
};

struct EvalOptions {
  EvalStart start;
  std::size_t max_states = 1'000'000;
};

struct HittingTimes {
  std::vector<HittingTime> edges;
  std::size_t states = 0;
  std::size_t transitions = 0;

  // Σ ε(e) t_e; nullopt if ε puts mass on an edge that is never reached.
  // Edges already visited at the start count as zero.
  std::optional<double> payoff(const HiderDistribution& eps) const;
  // max_e t_e over finite edges of `targets` (nullopt if one is unreachable).
  std::optional<double> worst(EdgeMask targets) const;
};

// Exact expected first-traversal time of every edge in `targets` under a
// Markovian policy: absorbing-chain solve over (plan, position, visited set).
// Throws CoverageError when an edge is reached with positive but not full
// probability, CapacityError beyond `max_states`.
HittingTimes policy_hitting_times(const RootedGraph& g, const ActivationParams& params,
                                  const SearcherPolicy& policy, EdgeMask targets,
                                  const EvalOptions& options = {});

inline HittingTimes policy_hitting_times(const RootedGraph& g, const ActivationParams& params,
                                         const SearcherPolicy& policy) {
  return policy_hitting_times(g, params, policy, g.all_edges());
}

}  // namespace ssg
