#include "ssg/activation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

void check_probability(double p, const std::string& where) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("activation probability for " + where + " must lie in (0,1], got " +
                      std::to_string(p));
  }
}

}  // namespace

ActivationParams::ActivationParams(const RootedGraph& g, double p)
    : p_(static_cast<std::size_t>(g.num_edges()), p) {
  check_probability(p, "all edges");
}

ActivationParams::ActivationParams(const RootedGraph& g, std::vector<double> per_edge)
    : p_(std::move(per_edge)) {
  if (static_cast<int>(p_.size()) != g.num_edges()) {
    throw DomainError("activation parameters must cover every edge");
  }
  for (int e = 0; e < g.num_edges(); ++e) check_probability(p_[e], "edge " + g.edge(e).id);
}

double ActivationParams::min() const {
  return p_.empty() ? 1.0 : *std::min_element(p_.begin(), p_.end());
}

bool ActivationParams::uniform() const {
  return std::all_of(p_.begin(), p_.end(), [&](double x) { return x == p_.front(); });
}

std::vector<IncidentPattern> pattern_distribution(const ActivationParams& params,
                                                  std::span<const int> edges) {
  if (edges.size() > kMaxPatternDegree) {
    throw CapacityError("pattern enumeration over " + std::to_string(edges.size()) +
                        " edges exceeds the limit of " + std::to_string(kMaxPatternDegree));
  }
  // Edges with p = 1 are always on; only the uncertain ones get enumerated.
  EdgeMask sure = 0;
  std::vector<int> uncertain;
  for (int e : edges) {
    if (params[e] >= 1.0) {
      sure |= edge_bit(e);
    } else {
      uncertain.push_back(e);
    }
  }
  const std::size_t n = uncertain.size();
  std::vector<IncidentPattern> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    IncidentPattern pat{sure, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
      const int e = uncertain[i];
      if ((bits >> i) & 1U) {
        pat.active |= edge_bit(e);
        pat.probability *= params[e];
      } else {
        pat.probability *= 1.0 - params[e];
      }
    }
    out.push_back(pat);
  }
  std::sort(out.begin(), out.end(),
            [](const IncidentPattern& a, const IncidentPattern& b) { return a.active < b.active; });
  return out;
}

std::vector<IncidentPattern> incident_pattern_distribution(const RootedGraph& g,
                                                           const ActivationParams& params,
                                                           int v, EdgeMask restriction) {
  if (v < 0 || v >= g.num_vertices()) throw DomainError("unknown vertex");
  const EdgeMask inc = g.incident_mask(v);
  if ((restriction & ~inc) != 0) {
    throw DomainError("restriction set contains edges not incident to " + g.vertex_name(v));
  }
  std::vector<int> edges;
  for (EdgeMask m = restriction; m != 0; m &= m - 1) edges.push_back(std::countr_zero(m));
  return pattern_distribution(params, edges);
}

// splitmix64 finaliser
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // top 53 bits -> [0,1)
  return static_cast<double>(hash_combine(seed, a, b) >> 11) * 0x1.0p-53;
}

EdgeMask sample_active_set(const ActivationParams& params, const ActivationStream& rng,
                           std::uint64_t stage) {
  EdgeMask active = 0;
  for (int e = 0; e < params.size(); ++e) {
    if (rng.draw(stage, static_cast<std::uint64_t>(e)) < params[e]) active |= edge_bit(e);
  }
  return active;
}

}  // namespace ssg
