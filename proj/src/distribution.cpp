#include "ssg/distribution.hpp"

#include <cmath>
#include <numeric>

#include "ssg/errors.hpp"

namespace ssg {

HiderDistribution::HiderDistribution(const RootedGraph& g, std::vector<double> mass)
    : mass_(std::move(mass)) {
  if (static_cast<int>(mass_.size()) != g.num_edges()) {
    throw DomainError("hider distribution must give a mass for every edge");
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("hider masses must be finite and >= 0");
    total += m;
  }
  if (total <= 0.0) throw DomainError("hider distribution has no mass");
  for (std::size_t e = 0; e < mass_.size(); ++e) {
    mass_[e] /= total;
    if (mass_[e] > 0.0) support_ |= edge_bit(static_cast<int>(e));
  }
}

HiderDistribution HiderDistribution::uniform(const RootedGraph& g) {
  return HiderDistribution(g, std::vector<double>(g.num_edges(), 1.0));
}

HiderDistribution HiderDistribution::point(const RootedGraph& g, int e) {
  std::vector<double> m(g.num_edges(), 0.0);
  m.at(e) = 1.0;
  return HiderDistribution(g, std::move(m));
}

HiderDistribution HiderDistribution::uniform_on(const RootedGraph& g, EdgeMask support) {
  std::vector<double> m(g.num_edges(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (has_edge(support, e)) m[e] = 1.0;
  }
  return HiderDistribution(g, std::move(m));
}

double HiderDistribution::mass_of(EdgeMask set) const {
  double s = 0.0;
  for (int e = 0; e < size(); ++e) {
    if (has_edge(set, e)) s += mass_[e];
  }
  return s;
}

}  // namespace ssg
