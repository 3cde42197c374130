#include "ssg/best_response.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LocalPattern {
  double prob;
  std::vector<int> active;  // active incident edges, increasing index
};

// Everything the dynamic program needs about the instance.
struct Model {
  const RootedGraph* g;
  int V;
  std::vector<int> support_edges;
  std::vector<int> sbit;  // edge -> bit in the compressed subset, or -1
  std::vector<std::vector<LocalPattern>> patterns;

  Model(const RootedGraph& graph, const ActivationParams& params, const HiderDistribution& eps)
      : g(&graph), V(graph.num_vertices()), sbit(graph.num_edges(), -1) {
    if (params.size() != graph.num_edges() || eps.size() != graph.num_edges()) {
      throw DomainError("activation parameters or hider distribution do not match graph");
    }
    for (int e = 0; e < graph.num_edges(); ++e) {
      if (eps[e] > 0.0) {
        sbit[e] = static_cast<int>(support_edges.size());
        support_edges.push_back(e);
      }
    }
    if (support_edges.size() > kMaxSupport) {
      throw CapacityError("best response supports at most " + std::to_string(kMaxSupport) +
                          " hider edges, got " + std::to_string(support_edges.size()));
    }
    patterns.resize(V);
    for (int v = 0; v < V; ++v) {
      for (const auto& pat : incident_pattern_distribution(graph, params, v, graph.incident_mask(v))) {
        LocalPattern lp{pat.probability, {}};
        for (EdgeMask m = pat.active; m != 0; m &= m - 1) lp.active.push_back(std::countr_zero(m));
        patterns[v].push_back(std::move(lp));
      }
    }
  }

  std::size_t layers() const { return std::size_t{1} << support_edges.size(); }

  std::uint32_t compress(EdgeMask remaining) const {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < support_edges.size(); ++j) {
      if (has_edge(remaining, support_edges[j])) out |= 1U << j;
    }
    return out;
  }

  // Where does edge e lead from v with I left, and is it an exit of the layer?
  struct Target {
    std::size_t slot;
    bool exit;
  };
  Target target(int v, int e, std::uint32_t I) const {
    const int w = g->edge(e).other(v);
    const int j = sbit[e];
    if (j >= 0 && ((I >> j) & 1U)) return {std::size_t(I ^ (1U << j)) * V + w, true};
    return {std::size_t(I) * V + w, false};
  }
};

// U = c + Σ_P π_P min(U, b_P) solved for U given the per-pattern best option.
double threshold_value(double c, std::vector<std::pair<double, double>>& options) {
  std::sort(options.begin(), options.end());
  double num = c;
  double den = 0.0;
  for (auto [b, prob] : options) {
    if (den > 0.0 && b >= num / den) break;
    num += prob * b;
    den += prob;
  }
  return den > 0.0 ? num / den : kInf;
}

class BestResponsePolicy final : public SearcherPolicy {
 public:
  BestResponsePolicy(const RootedGraph& g, std::shared_ptr<const Model> model,
                     std::vector<double> U, std::vector<int> rank, json hider)
      : g_(g), model_(std::move(model)), U_(std::move(U)), rank_(std::move(rank)),
        hider_(std::move(hider)) {}

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    EdgeMask support = 0;
    for (int e : model_->support_edges) support |= edge_bit(e);
    const EdgeMask remaining = support & ~d.visited;
    if (remaining == 0) {
      if (!cover_nearest(g_, d, d.plan, out)) out.push_back({-1, d.plan, 1.0});
      return;
    }
    const std::uint32_t I = model_->compress(remaining);
    const int V = model_->V;
    const std::size_t here = std::size_t(I) * V + d.position;
    int best_edge = -1;
    double best = kInf;
    for (EdgeMask m = d.active & g_.incident_mask(d.position); m != 0; m &= m - 1) {
      const int e = std::countr_zero(m);
      const auto t = model_->target(d.position, e, I);
      if (!t.exit && rank_[t.slot] >= rank_[here]) continue;
      if (U_[t.slot] < best) {
        best = U_[t.slot];
        best_edge = e;
      }
    }
    if (best_edge >= 0 && best < U_[here]) {
      out.push_back({best_edge, d.plan, 1.0});
    } else {
      out.push_back({-1, d.plan, 1.0});
    }
  }

  json descriptor() const override { return {{"kind", "best-response"}, {"hider", hider_}}; }

 private:
  RootedGraph g_;
  std::shared_ptr<const Model> model_;
  std::vector<double> U_;
  std::vector<int> rank_;
  json hider_;
};

std::vector<double> subset_masses(const Model& m, const HiderDistribution& eps) {
  std::vector<double> mass(m.layers(), 0.0);
  for (std::size_t I = 1; I < m.layers(); ++I) {
    const int j = std::countr_zero(I);
    mass[I] = mass[I & (I - 1)] + eps[m.support_edges[j]];
  }
  return mass;
}

// Bellman operator at (v, I) given a value table, on the U scale.
double bellman(const Model& m, const std::vector<double>& U, double c, int v, std::uint32_t I) {
  const double stay = U[std::size_t(I) * m.V + v];
  double acc = c;
  for (const auto& pat : m.patterns[v]) {
    double b = stay;
    for (int e : pat.active) b = std::min(b, U[m.target(v, e, I).slot]);
    acc += pat.prob * b;
  }
  return acc;
}

}  // namespace

struct BestResponseAccess {
  static void fill(BestResponse& br, const RootedGraph& g, const Model& m,
                   std::vector<double> mass) {
    br.root_ = g.root();
    br.num_vertices_ = g.num_vertices();
    br.support_edges_ = m.support_edges;
    br.support_ = 0;
    for (int e : m.support_edges) br.support_ |= edge_bit(e);
    br.mass_ = std::move(mass);
  }
};

double BestResponse::value() const { return W(root_, support_); }

double BestResponse::W(int v, EdgeMask remaining) const {
  std::uint32_t I = 0;
  for (std::size_t j = 0; j < support_edges_.size(); ++j) {
    if (has_edge(remaining, support_edges_[j])) I |= 1U << j;
  }
  if (I == 0) return 0.0;
  return U_.at(std::size_t(I) * num_vertices_ + v) / mass_[I];
}

BestResponse best_response_value(const RootedGraph& g, const ActivationParams& params,
                                 const HiderDistribution& eps) {
  auto model = std::make_shared<Model>(g, params, eps);
  const Model& m = *model;
  const int V = m.V;
  std::vector<double> mass = subset_masses(m, eps);
  std::vector<double> U(m.layers() * V, 0.0);
  std::vector<int> rank(m.layers() * V, -1);

  std::vector<char> settled(V);
  std::vector<double> tentative(V);
  std::vector<std::pair<double, double>> options;

  auto evaluate = [&](int v, std::uint32_t I) {
    options.clear();
    for (const auto& pat : m.patterns[v]) {
      double b = kInf;
      for (int e : pat.active) {
        const auto t = m.target(v, e, I);
        if (!t.exit && !settled[g.edge(e).other(v)]) continue;
        b = std::min(b, U[t.slot]);
      }
      if (b < kInf) options.emplace_back(b, pat.prob);
    }
    return threshold_value(mass[I], options);
  };

  for (std::uint32_t I = 1; I < m.layers(); ++I) {
    std::fill(settled.begin(), settled.end(), 0);
    for (int v = 0; v < V; ++v) tentative[v] = evaluate(v, I);
    for (int step = 0; step < V; ++step) {
      int pick = -1;
      for (int v = 0; v < V; ++v) {
        if (!settled[v] && (pick < 0 || tentative[v] < tentative[pick])) pick = v;
      }
      if (!std::isfinite(tentative[pick])) {
        throw DomainError("belief state with no way forward (disconnected support?)");
      }
      settled[pick] = 1;
      U[std::size_t(I) * V + pick] = tentative[pick];
      rank[std::size_t(I) * V + pick] = step;
      for (int e : g.incident(pick)) {
        const int w = g.edge(e).other(pick);
        if (!settled[w]) tentative[w] = evaluate(w, I);
      }
    }
  }

  BestResponse br;
  BestResponseAccess::fill(br, g, m, mass);
  double residual = 0.0;
  for (std::uint32_t I = 1; I < m.layers(); ++I) {
    for (int v = 0; v < V; ++v) {
      const double diff = std::abs(bellman(m, U, mass[I], v, I) - U[std::size_t(I) * V + v]);
      residual = std::max(residual, diff / mass[I]);
    }
  }
  br.residual_ = residual;

  json hider = json::object();
  for (int e : m.support_edges) hider[g.edge(e).id] = eps[e];
  br.U_ = U;
  br.rank_ = rank;
  br.policy_ = std::make_shared<BestResponsePolicy>(g, model, std::move(U), std::move(rank),
                                                    std::move(hider));
  return br;
}

ValueIterationReport value_iteration(const RootedGraph& g, const ActivationParams& params,
                                     const HiderDistribution& eps, double tol,
                                     std::size_t max_sweeps) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Model m(g, params, eps);
  const int V = m.V;
  const std::vector<double> mass = subset_masses(m, eps);
  std::vector<double> U(m.layers() * V, 0.0);
  ValueIterationReport rep;

  for (std::uint32_t I = 1; I < m.layers(); ++I) {
    // Jacobi sweeps inside the layer; lower layers are already converged
    std::vector<double> next(V);
    for (std::size_t sweep = 0;; ++sweep) {
      if (sweep >= max_sweeps) {
        throw ConvergenceError("value iteration did not converge", rep.residual);
      }
      double change = 0.0;
      for (int v = 0; v < V; ++v) next[v] = bellman(m, U, mass[I], v, I);
      for (int v = 0; v < V; ++v) {
        double& cur = U[std::size_t(I) * V + v];
        if (next[v] < cur - 1e-12 * std::max(1.0, cur)) rep.monotone = false;
        change = std::max(change, std::abs(next[v] - cur) / mass[I]);
        cur = next[v];
      }
      rep.sweeps += 1;
      if (change <= tol) {
        rep.residual = std::max(rep.residual, change);
        break;
      }
    }
  }
  const std::uint32_t full = static_cast<std::uint32_t>(m.layers() - 1);
  rep.value = full == 0 ? 0.0 : U[std::size_t(full) * V + g.root()] / mass[full];
  const BestResponse exact = best_response_value(g, params, eps);
  for (std::uint32_t I = 1; I < m.layers(); ++I) {
    EdgeMask remaining = 0;
    for (std::size_t j = 0; j < m.support_edges.size(); ++j) {
      if ((I >> j) & 1U) remaining |= edge_bit(m.support_edges[j]);
    }
    for (int v = 0; v < V; ++v) {
      rep.max_difference = std::max(
          rep.max_difference, std::abs(U[std::size_t(I) * V + v] / mass[I] - exact.W(v, remaining)));
    }
  }
  return rep;
}

}  // namespace ssg
