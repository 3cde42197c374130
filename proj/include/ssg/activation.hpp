#pragma once

#include <cstdint>
#include <vector>

#include "ssg/graph.hpp"

namespace ssg {

// Per-edge activation probabilities, indexed like the graph's edges.
class ActivationParams {
 public:
  ActivationParams() = default;
  ActivationParams(const RootedGraph& g, double p);
  ActivationParams(const RootedGraph& g, std::vector<double> per_edge);

  double operator[](int e) const { return p_[e]; }
  int size() const { return static_cast<int>(p_.size()); }
  const std::vector<double>& values() const { return p_; }

  double min() const;
  // True when every edge has the same probability.
  bool uniform() const;

 private:
  std::vector<double> p_;
};

// One configuration of the active edges around a vertex.
struct IncidentPattern {
  EdgeMask active = 0;
  double probability = 0.0;
};

inline constexpr int kMaxPatternDegree = 20;

// Exact distribution of the active subset of `restriction` (edges outside it
// are marginalised out). Patterns of probability zero are dropped, so at p = 1
// only the full pattern comes back. Order: increasing mask value.
std::vector<IncidentPattern> incident_pattern_distribution(const RootedGraph& g,
                                                           const ActivationParams& params,
                                                           int v, EdgeMask restriction);

// Same thing over an arbitrary list of edges.
std::vector<IncidentPattern> pattern_distribution(const ActivationParams& params,
                                                  std::span<const int> edges);

// Counter based generator: every draw is a pure function of the seed and two
// counters, so episodes can run in any order on any number of threads.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a, std::uint64_t b);
double uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

class ActivationStream {
 public:
  explicit ActivationStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // Uniform draw for (stage, slot). Slots 0..|E|-1 are the edges.
  double draw(std::uint64_t stage, std::uint64_t slot) const {
    return uniform01(seed_, stage, slot);
  }

 private:
  std::uint64_t seed_;
};

EdgeMask sample_active_set(const ActivationParams& params, const ActivationStream& rng,
                           std::uint64_t stage);

}  // namespace ssg
