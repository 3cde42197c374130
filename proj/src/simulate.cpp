#include "ssg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

// Slots past the edges in the counter-based stream.
std::uint64_t action_slot(const RootedGraph& g) { return g.num_edges() + 1; }
std::uint64_t plan_slot(const RootedGraph& g) { return g.num_edges() + 2; }
std::uint64_t hider_slot(const RootedGraph& g) { return g.num_edges() + 3; }

template <class Chooser>
History run(const RootedGraph& g, const ActivationParams& params, int hider_edge,
            std::uint64_t seed, const EpisodeOptions& opt, Chooser&& choose) {
  if (hider_edge < 0 || hider_edge >= g.num_edges()) throw DomainError("hider edge out of range");
  History h;
  h.seed = seed;
  h.hider_edge = hider_edge;
  h.start = opt.start.position < 0 ? g.root() : opt.start.position;
  h.start_visited = opt.start.visited;
  const ActivationStream rng(seed);
  int pos = h.start;
  for (std::uint64_t t = 1; t <= opt.stage_cap; ++t) {
    const EdgeMask active = sample_active_set(params, rng, t);
    const int e = choose(h, pos, active, rng.draw(t, action_slot(g)));
    if (e >= 0) pos = g.edge(e).other(pos);
    h.length = t;
    if (opt.record) h.stages.push_back({active, pos, e});
    if (e == hider_edge) {
      h.capture = t;
      return h;
    }
  }
  h.timed_out = true;
  return h;
}

}  // namespace

History simulate_episode(const RootedGraph& g, const ActivationParams& params, int hider_edge,
                         const SearcherPolicy& policy, std::uint64_t seed,
                         const EpisodeOptions& options) {
  const auto starts = policy.initial_plans();
  // draw the committed plan
  const double u0 = uniform01(seed, 0, plan_slot(g));
  std::int64_t plan = starts.back().plan;
  double acc = 0.0;
  for (const auto& s : starts) {
    acc += s.probability;
    if (u0 < acc) {
      plan = s.plan;
      break;
    }
  }
  EdgeMask visited = options.start.visited;
  std::vector<Action> actions;
  return run(g, params, hider_edge, seed, options,
             [&](const History&, int pos, EdgeMask active, double u) {
               policy.decide({plan, pos, visited, active & g.incident_mask(pos)}, actions);
               const Action* pick = &actions.back();
               double c = 0.0;
               for (const auto& a : actions) {
                 c += a.probability;
                 if (u < c) {
                   pick = &a;
                   break;
                 }
               }
               plan = pick->next_plan;
               if (pick->edge >= 0) visited |= edge_bit(pick->edge);
               return pick->edge;
             });
}

History simulate_episode(const RootedGraph& g, const ActivationParams& params, int hider_edge,
                         const HistoryStrategy& strategy, std::uint64_t seed,
                         const EpisodeOptions& options) {
  EpisodeOptions opt = options;
  opt.record = true;  // the strategy gets to see the history
  return run(g, params, hider_edge, seed, opt,
             [&](const History& h, int pos, EdgeMask active, double u) {
               const int e = strategy(h, pos, active, u);
               if (e >= 0 && (!has_edge(active, e) || !g.edge(e).touches(pos))) {
                 throw DomainError("strategy chose an infeasible edge");
               }
               return e;
             });
}

std::optional<std::string> audit(const RootedGraph& g, const History& h) {
  int pos = h.start;
  for (std::size_t i = 0; i < h.stages.size(); ++i) {
    const auto& s = h.stages[i];
    const std::string at = "stage " + std::to_string(i + 1) + ": ";
    if (s.edge >= 0) {
      if (!has_edge(s.active, s.edge)) return at + "moved along inactive edge " + g.edge(s.edge).id;
      if (!g.edge(s.edge).touches(pos)) return at + "edge " + g.edge(s.edge).id + " not at position";
      if (s.position != g.edge(s.edge).other(pos)) return at + "position does not follow the edge";
      if (s.edge == h.hider_edge && (!h.capture || *h.capture != i + 1)) {
        return at + "hider edge traversed without capture";
      }
    } else if (s.position != pos) {
      return at + "position changed while waiting";
    }
    pos = s.position;
  }
  if (h.capture && (h.stages.empty() || h.stages.back().edge != h.hider_edge ||
                    *h.capture != h.stages.size())) {
    return std::string("capture stage does not match the walk");
  }
  return std::nullopt;
}

json EstimateReport::to_json() const {
  json j{{"mean", mean}, {"se", se}, {"n", n}, {"seed", seed}, {"censored", censored}};
  if (!se_defined) j["se_undefined"] = true;
  if (biased()) j["biased"] = true;
  return j;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

EstimateReport monte_carlo(const RootedGraph& g, const ActivationParams& params,
                           const HiderDistribution& eps, const SearcherPolicy& policy,
                           std::uint64_t n, std::uint64_t seed, unsigned jobs,
                           const EpisodeOptions& options) {
  if (n < 1) throw DomainError("need at least one episode");
  std::vector<double> times(n);
  std::vector<char> censored(n, 0);
  EpisodeOptions opt = options;
  opt.record = false;

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t s = hash_combine(seed, i, 0x5eedULL);
      // hider edge by inverse CDF
      const double u = uniform01(s, 0, hider_slot(g));
      int edge = -1;
      double acc = 0.0;
      for (int e = 0; e < eps.size(); ++e) {
        if (eps[e] <= 0.0) continue;
        edge = e;
        acc += eps[e];
        if (u < acc) break;
      }
      const History h = simulate_episode(g, params, edge, policy, s, opt);
      times[i] = static_cast<double>(h.length);
      censored[i] = h.timed_out;
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(n, 256))));
  if (jobs == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    const std::uint64_t chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t b = std::min<std::uint64_t>(n, j * chunk);
      const std::uint64_t e = std::min<std::uint64_t>(n, b + chunk);
      pool.emplace_back([&, j, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  EstimateReport r;
  r.n = n;
  r.seed = seed;
  r.censored = static_cast<std::uint64_t>(std::count(censored.begin(), censored.end(), 1));
  r.mean = pairwise_sum(times.data(), n) / static_cast<double>(n);
  if (n == 1) {
    r.se = 0.0;
    r.se_defined = false;
  } else {
    std::vector<double> sq(n);
    for (std::uint64_t i = 0; i < n; ++i) sq[i] = (times[i] - r.mean) * (times[i] - r.mean);
    r.se = std::sqrt(pairwise_sum(sq.data(), n) / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return r;
}

}  // namespace ssg
