#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssg/activation.hpp"
#include "ssg/analytic.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"

namespace ssg {

using json = nlohmann::json;

// What the searcher sees when she moves: her internal plan, where she is,
// which edges she has traversed so far and which incident edges are active.
struct DecisionPoint {
  std::int64_t plan = 0;
  int position = 0;
  EdgeMask visited = 0;
  EdgeMask active = 0;  // restricted to edges incident to `position`
};

// edge == -1 means stay put for this stage.
struct Action {
  int edge = -1;
  std::int64_t next_plan = 0;
  double probability = 1.0;
};

struct PlanStart {
  std::int64_t plan = 0;
  double probability = 1.0;
};

// Markovian behaviour strategy. Implementations must be stateless: all memory
// lives in the plan value, so one policy object can drive many episodes and
// the exact evaluator can enumerate its state space.
class SearcherPolicy {
 public:
  virtual ~SearcherPolicy() = default;

  virtual std::vector<PlanStart> initial_plans() const { return {{0, 1.0}}; }
  // Appends the action distribution for `d` to `out` (out is cleared first).
  // Probabilities must sum to 1 and every move must use an active edge.
  virtual void decide(const DecisionPoint& d, std::vector<Action>& out) const = 0;
  virtual json descriptor() const = 0;
};

using PolicyPtr = std::shared_ptr<const SearcherPolicy>;

// Fallback used after a plan runs out: take an active unvisited incident edge
// if there is one (lowest index), otherwise step along an active edge that
// brings her closer to the nearest unvisited edge, otherwise wait. Keeps every
// hitting time finite. Returns false (and appends nothing) if all edges are
// visited.
bool cover_nearest(const RootedGraph& g, const DecisionPoint& d, std::int64_t next_plan,
                   std::vector<Action>& out);

// -- Chinese postman ----------------------------------------------------------

// Uniform mixture over all Chinese postman tours, committed at the start.
PolicyPtr ucps(const RootedGraph& g);
// A single committed walk (used for the pure plans of the counterexamples).
PolicyPtr fixed_walk(const RootedGraph& g, Walk walk, int start = -1);

// -- Eulerian -----------------------------------------------------------------

// Uniform Eulerian strategy: uniform over active unvisited edges that keep an
// Eulerian completion possible (bridge avoidance), wait otherwise.
PolicyPtr ues(const RootedGraph& g);
// Pure Eulerian strategy: same allowed set, but picks the first active edge in
// a priority list (a permutation of all edge indices).
PolicyPtr priority_es(const RootedGraph& g, std::vector<int> priority);
// Pure Eulerian strategies on a parallel Eulerian graph: the searcher ranks the
// paths, separately at O and at D. All rank pairs when there are at most
// `cap` of them, otherwise a deterministic spread of `cap` pairs.
std::vector<PolicyPtr> enumerate_pure_es(const RootedGraph& g, std::size_t cap = 1000);

// Uniform over active unsearched paths at O and D, straight on in between.
PolicyPtr parallel_uniform(const RootedGraph& g);

// -- Depth first --------------------------------------------------------------

enum class BranchRule { kUniform, kBiased, kFixed };

// UDFS.
PolicyPtr udfs(const RootedGraph& g);
// BDFS with α from the Λ recursion at uniform probability p (binary trees).
PolicyPtr bdfs(const RootedGraph& g, double p);
// Pure DFS: at each vertex, take the first active unsearched child in
// `order[v]` (a permutation of the children). Missing vertices use the natural
// child order.
PolicyPtr pure_dfs(const RootedGraph& g, const std::map<int, std::vector<int>>& order);
// Every pure DFS obtained from child orderings.
std::vector<PolicyPtr> enumerate_pure_dfs(const RootedGraph& g, std::size_t cap = 100000);

// The low-p strategy for the simple binary tree (waits at v2 with
// probability ζ(p) once one of the two lower leaves is done).
PolicyPtr simple_tree_low_p_policy(const RootedGraph& g, double p);

// -- Generic ------------------------------------------------------------------

// Finite branching plan. Each node lists options (edge, next node); the
// searcher takes an active option uniformly at random, or waits. A node with
// no options hands over to cover_nearest.
struct ScriptNode {
  std::vector<std::pair<int, int>> options;
};
PolicyPtr scripted(const RootedGraph& g, std::vector<ScriptNode> nodes, std::string label = "scripted");

// Mixed strategy: component i is drawn at the start with probability w[i].
PolicyPtr mixture(std::vector<PolicyPtr> parts, std::vector<double> weights);

// Builds a policy from the CLI descriptor: {"kind": "udfs" | "bdfs" | "ucps" |
// "ues" | "parallel-uniform" | "simple-low-p" | "pure-dfs", "order": {...}}.
PolicyPtr policy_from_descriptor(const RootedGraph& g, const ActivationParams& params,
                                 const json& desc);

}  // namespace ssg
