#include "ssg/policy_eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

struct StateKey {
  std::int64_t plan;
  int position;
  EdgeMask visited;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    return hash_combine(static_cast<std::uint64_t>(k.plan), static_cast<std::uint64_t>(k.position),
                        k.visited);
  }
};

struct Transition {
  int to;
  int edge;  // -1 when staying
  double prob;
};

// The explored chain in CSR layout.
struct Chain {
  std::vector<StateKey> states;
  std::vector<std::size_t> first;  // transitions of s: [first[s], first[s+1])
  std::vector<Transition> trans;
  std::vector<std::pair<int, double>> start;  // (state, probability)
};

std::string describe(const RootedGraph& g, const StateKey& s) {
  std::string out = "plan " + std::to_string(s.plan) + " at " + g.vertex_name(s.position) +
                    ", visited {";
  bool first = true;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!has_edge(s.visited, e)) continue;
    out += (first ? "" : ",") + g.edge(e).id;
    first = false;
  }
  return out + "}";
}

Chain explore(const RootedGraph& g, const ActivationParams& params, const SearcherPolicy& policy,
              const EvalOptions& opt) {
  Chain c;
  std::unordered_map<StateKey, int, StateKeyHash> index;
  auto intern = [&](const StateKey& k) {
    auto [it, fresh] = index.emplace(k, static_cast<int>(c.states.size()));
    if (fresh) {
      if (c.states.size() >= opt.max_states) {
        throw CapacityError("policy state space exceeds " + std::to_string(opt.max_states) +
                            " states");
      }
      c.states.push_back(k);
    }
    return it->second;
  };

  const int start_pos = opt.start.position < 0 ? g.root() : opt.start.position;
  if (start_pos >= g.num_vertices()) throw DomainError("start position is not a vertex");
  for (const auto& s : policy.initial_plans()) {
    if (s.probability <= 0.0) continue;
    c.start.emplace_back(intern({s.plan, start_pos, opt.start.visited}), s.probability);
  }

  std::vector<std::vector<IncidentPattern>> patterns(g.num_vertices());
  std::vector<char> have_patterns(g.num_vertices(), 0);
  std::vector<Action> actions;
  c.first.push_back(0);
  for (std::size_t s = 0; s < c.states.size(); ++s) {
    const StateKey key = c.states[s];  // copy: interning may reallocate
    const int v = key.position;
    if (!have_patterns[v]) {
      patterns[v] = incident_pattern_distribution(g, params, v, g.incident_mask(v));
      have_patterns[v] = 1;
    }
    const std::size_t begin = c.trans.size();
    for (const auto& pat : patterns[v]) {
      policy.decide({key.plan, v, key.visited, pat.active}, actions);
      double total = 0.0;
      for (const auto& a : actions) {
        total += a.probability;
        if (a.probability < 0.0) throw DomainError("policy produced a negative probability");
        if (a.probability == 0.0) continue;
        int to_pos = v;
        EdgeMask vis = key.visited;
        if (a.edge >= 0) {
          if (a.edge >= g.num_edges() || !g.edge(a.edge).touches(v) ||
              !has_edge(pat.active, a.edge)) {
            throw DomainError("policy moved along an inactive or non-incident edge at " +
                              describe(g, key));
          }
          to_pos = g.edge(a.edge).other(v);
          vis |= edge_bit(a.edge);
        }
        const int to = intern({a.next_plan, to_pos, vis});
        const int edge = a.edge >= 0 && !has_edge(key.visited, a.edge) ? a.edge : -1;
        const double pr = pat.probability * a.probability;
        // merge parallel transitions so the matrices stay small
        bool merged = false;
        for (std::size_t t = begin; t < c.trans.size(); ++t) {
          if (c.trans[t].to == to && c.trans[t].edge == edge) {
            c.trans[t].prob += pr;
            merged = true;
            break;
          }
        }
        if (!merged) c.trans.push_back({to, edge, pr});
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw DomainError("policy action probabilities do not sum to 1 at " + describe(g, key));
      }
    }
    c.first.push_back(c.trans.size());
  }
  return c;
}

}  // namespace

std::optional<double> HittingTimes::payoff(const HiderDistribution& eps) const {
  double total = 0.0;
  for (int e = 0; e < eps.size(); ++e) {
    if (eps[e] == 0.0) continue;
    const auto& h = edges.at(e);
    if (h.status == HitStatus::kUnreachable) return std::nullopt;
    if (h.status == HitStatus::kFinite) total += eps[e] * h.value;
  }
  return total;
}

std::optional<double> HittingTimes::worst(EdgeMask targets) const {
  double best = 0.0;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (!has_edge(targets, e)) continue;
    if (edges[e].status == HitStatus::kUnreachable) return std::nullopt;
    if (edges[e].status == HitStatus::kFinite) best = std::max(best, edges[e].value);
  }
  return best;
}

HittingTimes policy_hitting_times(const RootedGraph& g, const ActivationParams& params,
                                  const SearcherPolicy& policy, EdgeMask targets,
                                  const EvalOptions& options) {
  if (params.size() != g.num_edges()) throw DomainError("activation parameters do not match graph");
  const Chain c = explore(g, params, policy, options);
  const int n = static_cast<int>(c.states.size());

  HittingTimes out;
  out.states = c.states.size();
  out.transitions = c.trans.size();
  out.edges.assign(g.num_edges(), HittingTime{});

  // Which targets does the chain ever capture, and from which states can it?
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s) {
    for (std::size_t t = c.first[s]; t < c.first[s + 1]; ++t) preds[c.trans[t].to].push_back(s);
  }
  std::vector<int> live_targets;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!has_edge(targets, e)) continue;
    if (has_edge(options.start.visited, e)) {
      out.edges[e].status = HitStatus::kAlreadyVisited;
      continue;
    }
    std::vector<char> can(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
      if (has_edge(c.states[s].visited, e)) continue;
      for (std::size_t t = c.first[s]; t < c.first[s + 1]; ++t) {
        if (c.trans[t].edge == e) {
          can[s] = 1;
          stack.push_back(s);
          break;
        }
      }
    }
    if (stack.empty()) {
      out.edges[e].status = HitStatus::kUnreachable;
      continue;
    }
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int r : preds[s]) {
        if (!can[r] && !has_edge(c.states[r].visited, e)) {
          can[r] = 1;
          stack.push_back(r);
        }
      }
    }
    for (int s = 0; s < n; ++s) {
      if (!has_edge(c.states[s].visited, e) && !can[s]) {
        throw CoverageError("edge " + g.edge(e).id + " is never reached from state " +
                            describe(g, c.states[s]));
      }
    }
    live_targets.push_back(e);
  }

  // Layers by visited set, supersets first: transitions never shrink the set.
  std::map<EdgeMask, std::vector<int>> layers;
  for (int s = 0; s < n; ++s) layers[c.states[s].visited].push_back(s);
  std::vector<EdgeMask> order;
  for (const auto& [m, _] : layers) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](EdgeMask a, EdgeMask b) { return std::popcount(a) > std::popcount(b); });

  // t[s][k]: hitting time of live_targets[k] from s (only where unvisited).
  const int K = static_cast<int>(live_targets.size());
  std::vector<double> t(static_cast<std::size_t>(n) * std::max(K, 1), 0.0);
  std::vector<int> local(n, -1);

  for (EdgeMask mask : order) {
    const auto& members = layers[mask];
    std::vector<int> cols;
    for (int k = 0; k < K; ++k) {
      if (!has_edge(mask, live_targets[k])) cols.push_back(k);
    }
    if (cols.empty()) continue;
    const int m = static_cast<int>(members.size());
    for (int i = 0; i < m; ++i) local[members[i]] = i;

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Ones(m, static_cast<int>(cols.size()));
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m; ++i) {
      const int s = members[i];
      trip.emplace_back(i, i, 1.0);
      for (std::size_t tr = c.first[s]; tr < c.first[s + 1]; ++tr) {
        const auto& x = c.trans[tr];
        if (c.states[x.to].visited == mask) {
          trip.emplace_back(i, local[x.to], -x.prob);
          continue;
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
          const int k = cols[j];
          if (x.edge == live_targets[k]) continue;  // caught
          rhs(i, static_cast<int>(j)) += x.prob * t[static_cast<std::size_t>(x.to) * K + k];
        }
      }
    }

    Eigen::MatrixXd sol;
    if (m <= 96) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
      for (const auto& tr : trip) a(tr.row(), tr.col()) += tr.value();
      sol = a.partialPivLu().solve(rhs);
    } else {
      Eigen::SparseMatrix<double> a(m, m);
      a.setFromTriplets(trip.begin(), trip.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(a);
      if (lu.info() != Eigen::Success) {
        throw CoverageError("singular hitting-time system at " + describe(g, c.states[members[0]]));
      }
      sol = lu.solve(rhs);
    }
    for (int i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const double val = sol(i, static_cast<int>(j));
        if (!std::isfinite(val)) {
          throw CoverageError("non-finite hitting time at " + describe(g, c.states[members[i]]));
        }
        t[static_cast<std::size_t>(members[i]) * K + cols[j]] = val;
      }
    }
  }

  for (int k = 0; k < K; ++k) {
    double v = 0.0;
    for (auto [s, pr] : c.start) v += pr * t[static_cast<std::size_t>(s) * K + k];
    out.edges[live_targets[k]] = {HitStatus::kFinite, v};
  }
  return out;
}

}  // namespace ssg
