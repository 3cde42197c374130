#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssg/activation.hpp"
#include "ssg/distribution.hpp"
#include "ssg/graph.hpp"
#include "ssg/policy_eval.hpp"
#include "ssg/strategies.hpp"

namespace ssg {

struct StageRecord {
  EdgeMask active = 0;  // whole-graph draw
  int position = 0;     // searcher position after the stage
  int edge = -1;        // edge traversed this stage, -1 if she waited
};

struct History {
  int start = 0;
  EdgeMask start_visited = 0;
  int hider_edge = -1;
  std::uint64_t seed = 0;
  std::vector<StageRecord> stages;  // empty unless recording was requested
  std::optional<std::uint64_t> capture;  // first stage that traverses the hider edge
  bool timed_out = false;
  std::uint64_t length = 0;  // stages played
};

struct EpisodeOptions {
  std::uint64_t stage_cap = 1'000'000;
  bool record = true;
  EvalStart start;
};

History simulate_episode(const RootedGraph& g, const ActivationParams& params, int hider_edge,
                         const SearcherPolicy& policy, std::uint64_t seed,
                         const EpisodeOptions& options = {});

// History-dependent searchers: called once per stage with the history so far
// (including this stage's draw in `active`) and a uniform variate; returns
// the edge to traverse or -1 to wait.
using HistoryStrategy =
    std::function<int(const History& so_far, int position, EdgeMask active, double u)>;

History simulate_episode(const RootedGraph& g, const ActivationParams& params, int hider_edge,
                         const HistoryStrategy& strategy, std::uint64_t seed,
                         const EpisodeOptions& options = {});

// Checks the walk against the draws: moves only along active edges at the
// current position, and capture at the first traversal of the hider edge.
// Returns a description of the first problem, or nullopt.
std::optional<std::string> audit(const RootedGraph& g, const History& h);

struct EstimateReport {
  double mean = 0.0;
  double se = 0.0;
  bool se_defined = true;  // false for n = 1
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t censored = 0;  // episodes stopped by the stage cap (counted at the cap)

  bool biased() const { return censored > 0; }
  json to_json() const;
};

// Sample mean of the capture time with the hider drawn from eps. Results are
// identical for any number of jobs.
EstimateReport monte_carlo(const RootedGraph& g, const ActivationParams& params,
                           const HiderDistribution& eps, const SearcherPolicy& policy,
                           std::uint64_t n, std::uint64_t seed, unsigned jobs = 1,
                           const EpisodeOptions& options = {});

// Pairwise (cascade) summation.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace ssg
