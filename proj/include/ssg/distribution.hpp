#pragma once

#include <vector>

#include "ssg/graph.hpp"

namespace ssg {

// Hider's mixed strategy: a probability per edge index.
class HiderDistribution {
 public:
  HiderDistribution() = default;
  // Normalises `mass`; throws DomainError on negative or all-zero input.
  HiderDistribution(const RootedGraph& g, std::vector<double> mass);

  static HiderDistribution uniform(const RootedGraph& g);
  static HiderDistribution point(const RootedGraph& g, int e);
  static HiderDistribution uniform_on(const RootedGraph& g, EdgeMask support);

  double operator[](int e) const { return mass_[e]; }
  int size() const { return static_cast<int>(mass_.size()); }
  const std::vector<double>& masses() const { return mass_; }
  EdgeMask support() const { return support_; }
  double mass_of(EdgeMask set) const;

 private:
  std::vector<double> mass_;
  EdgeMask support_ = 0;
};

// Uniform density on E.
inline HiderDistribution uniform_density(const RootedGraph& g) {
  return HiderDistribution::uniform(g);
}

}  // namespace ssg
