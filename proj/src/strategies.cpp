#include "ssg/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

void move(std::vector<Action>& out, int e, std::int64_t plan, double prob = 1.0) {
  out.push_back({e, plan, prob});
}

void wait(std::vector<Action>& out, std::int64_t plan, double prob = 1.0) {
  out.push_back({-1, plan, prob});
}

void uniform_over(std::vector<Action>& out, EdgeMask choices, std::int64_t plan) {
  const double w = 1.0 / std::popcount(choices);
  for (EdgeMask m = choices; m != 0; m &= m - 1) move(out, std::countr_zero(m), plan, w);
}

int lowest(EdgeMask m) { return std::countr_zero(m); }

// Is e a bridge of the subgraph formed by the edges in `edges`?
bool is_bridge(const RootedGraph& g, EdgeMask edges, int e) {
  const EdgeMask rest = edges & ~edge_bit(e);
  const int from = g.edge(e).u;
  const int to = g.edge(e).v;
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (x == to) return false;
    for (int f : g.incident(x)) {
      if (!has_edge(rest, f)) continue;
      const int y = g.edge(f).other(x);
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return true;
}

// Unvisited incident edges that keep an Eulerian completion available
// (Fleury's rule). If every candidate is a bridge, all of them are allowed.
EdgeMask fleury_allowed(const RootedGraph& g, int pos, EdgeMask visited) {
  const EdgeMask unvisited = g.all_edges() & ~visited;
  const EdgeMask here = g.incident_mask(pos) & unvisited;
  if (std::popcount(here) <= 1) return here;
  EdgeMask ok = 0;
  for (EdgeMask m = here; m != 0; m &= m - 1) {
    const int e = lowest(m);
    if (!is_bridge(g, unvisited, e)) ok |= edge_bit(e);
  }
  return ok != 0 ? ok : here;
}

json edge_names(const RootedGraph& g, const std::vector<int>& edges) {
  json arr = json::array();
  for (int e : edges) arr.push_back(g.edge(e).id);
  return arr;
}

// ---------------------------------------------------------------------------

class WalkPolicy final : public SearcherPolicy {
 public:
  WalkPolicy(const RootedGraph& g, std::vector<Walk> walks, std::string kind)
      : g_(g), walks_(std::move(walks)), kind_(std::move(kind)) {
    if (walks_.empty()) throw DomainError("no walks to follow");
    stride_ = 0;
    for (const auto& w : walks_) stride_ = std::max<std::int64_t>(stride_, w.size() + 1);
  }

  std::vector<PlanStart> initial_plans() const override {
    std::vector<PlanStart> out;
    const double w = 1.0 / walks_.size();
    for (std::size_t i = 0; i < walks_.size(); ++i) out.push_back({std::int64_t(i) * stride_, w});
    return out;
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    const auto& walk = walks_[d.plan / stride_];
    const auto step = static_cast<std::size_t>(d.plan % stride_);
    if (step >= walk.size()) {
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    const int e = walk[step];
    if (!g_.edge(e).touches(d.position)) {
      throw DomainError("walk edge " + g_.edge(e).id + " is not incident to " +
                        g_.vertex_name(d.position));
    }
    if (has_edge(d.active, e)) {
      move(out, e, d.plan + 1);
    } else {
      wait(out, d.plan);
    }
  }

  json descriptor() const override {
    json j{{"kind", kind_}};
    if (walks_.size() == 1) {
      j["walk"] = edge_names(g_, walks_[0]);
    } else {
      j["tours"] = walks_.size();
    }
    return j;
  }

 private:
  RootedGraph g_;
  std::vector<Walk> walks_;
  std::int64_t stride_ = 1;
  std::string kind_;
};

// ---------------------------------------------------------------------------

class EulerianPolicy final : public SearcherPolicy {
 public:
  EulerianPolicy(const RootedGraph& g, std::vector<int> priority)
      : g_(g), priority_(std::move(priority)) {
    if (classify(g_) != GraphClass::kEulerian) {
      throw DomainError("Eulerian strategies need an Eulerian graph");
    }
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    const EdgeMask allowed = fleury_allowed(g_, d.position, d.visited);
    if (allowed == 0) {
      // stranded away from the remaining edges: only happens from odd starts
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    const EdgeMask choices = allowed & d.active;
    if (choices == 0) {
      wait(out, d.plan);
    } else if (priority_.empty()) {
      uniform_over(out, choices, d.plan);
    } else {
      for (int e : priority_) {
        if (has_edge(choices, e)) {
          move(out, e, d.plan);
          return;
        }
      }
    }
  }

  json descriptor() const override {
    if (priority_.empty()) return {{"kind", "ues"}};
    return {{"kind", "pure-es"}, {"priority", edge_names(g_, priority_)}};
  }

 private:
  RootedGraph g_;
  std::vector<int> priority_;
};

// ---------------------------------------------------------------------------

// Parallel graphs: at a terminal pick an unsearched path (uniformly, or by
// rank), in the middle of a path keep going.
class ParallelPolicy final : public SearcherPolicy {
 public:
  ParallelPolicy(const RootedGraph& g, std::vector<int> rank_o, std::vector<int> rank_d)
      : g_(g), rank_o_(std::move(rank_o)), rank_d_(std::move(rank_d)) {
    auto desc = parallel_structure(g_);
    if (!desc) throw DomainError("graph is not a parallel graph rooted at a terminal");
    par_ = std::move(*desc);
    path_mask_.assign(par_.paths.size(), 0);
    for (std::size_t i = 0; i < par_.paths.size(); ++i) {
      for (int e : par_.paths[i]) path_mask_[i] |= edge_bit(e);
    }
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    const int v = d.position;
    if (v == par_.origin || v == par_.destination) {
      const bool at_o = v == par_.origin;
      // path i leaves this terminal through its first (or last) edge
      std::vector<int> open;
      for (std::size_t i = 0; i < par_.paths.size(); ++i) {
        if ((path_mask_[i] & ~d.visited) == 0) continue;
        const int e = at_o ? par_.paths[i].front() : par_.paths[i].back();
        if (!has_edge(d.visited, e)) open.push_back(static_cast<int>(i));
      }
      if (open.empty()) {
        if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
        return;
      }
      EdgeMask choices = 0;
      for (int i : open) {
        const int e = at_o ? par_.paths[i].front() : par_.paths[i].back();
        if (has_edge(d.active, e)) choices |= edge_bit(e);
      }
      if (choices == 0) {
        wait(out, d.plan);
        return;
      }
      const auto& rank = at_o ? rank_o_ : rank_d_;
      if (rank.empty()) {
        uniform_over(out, choices, d.plan);
        return;
      }
      for (int i : rank) {
        const int e = at_o ? par_.paths[i].front() : par_.paths[i].back();
        if (has_edge(choices, e)) {
          move(out, e, d.plan);
          return;
        }
      }
      wait(out, d.plan);
      return;
    }
    const EdgeMask ahead = g_.incident_mask(v) & ~d.visited;
    if (ahead == 0) {
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    const EdgeMask choices = ahead & d.active;
    if (choices == 0) {
      wait(out, d.plan);
    } else {
      uniform_over(out, choices, d.plan);
    }
  }

  json descriptor() const override {
    if (rank_o_.empty()) return {{"kind", "parallel-uniform"}};
    return {{"kind", "pure-es"}, {"rank_at_origin", rank_o_}, {"rank_at_destination", rank_d_}};
  }

 private:
  RootedGraph g_;
  ParallelDescriptor par_;
  std::vector<EdgeMask> path_mask_;
  std::vector<int> rank_o_, rank_d_;
};

// ---------------------------------------------------------------------------

class DfsPolicy : public SearcherPolicy {
 public:
  DfsPolicy(const RootedGraph& g, BranchRule rule) : g_(g), tree_(g_), rule_(rule) {
    if (classify(g_) != GraphClass::kTree) throw DomainError("depth-first search needs a tree");
  }
  DfsPolicy(const DfsPolicy&) = delete;
  DfsPolicy& operator=(const DfsPolicy&) = delete;

  void set_alpha(std::vector<BranchWeights> alpha) { alpha_ = std::move(alpha); }
  void set_order(std::vector<std::vector<int>> order) { order_ = std::move(order); }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    dfs_step(d, out);
  }

  json descriptor() const override {
    switch (rule_) {
      case BranchRule::kUniform:
        return {{"kind", "udfs"}};
      case BranchRule::kBiased: {
        json a = json::object();
        for (int v = 0; v < g_.num_vertices(); ++v) {
          if (tree_.children(v).size() == 2) a[g_.vertex_name(v)] = alpha_[v].first;
        }
        return {{"kind", "bdfs"}, {"alpha", a}};
      }
      case BranchRule::kFixed: {
        json o = json::object();
        for (int v = 0; v < g_.num_vertices(); ++v) {
          if (tree_.children(v).size() > 1) o[g_.vertex_name(v)] = edge_names(g_, order_[v]);
        }
        return {{"kind", "pure-dfs"}, {"order", o}};
      }
    }
    return {};
  }

 protected:
  void dfs_step(const DecisionPoint& d, std::vector<Action>& out) const {
    const int v = d.position;
    const auto kids = tree_.children(v);
    EdgeMask unsearched = 0;
    for (int e : kids) {
      if ((tree_.edge_subtree(e) & ~d.visited) != 0) unsearched |= edge_bit(e);
    }
    if (unsearched != 0) {
      const EdgeMask choices = unsearched & d.active;
      if (choices == 0) {
        wait(out, d.plan);
        return;
      }
      switch (rule_) {
        case BranchRule::kUniform:
          uniform_over(out, choices, d.plan);
          return;
        case BranchRule::kBiased:
          if (kids.size() == 2 && std::popcount(choices) == 2) {
            const auto& a = alpha_[v];
            if (a.first > 0.0) move(out, kids[0], d.plan, a.first);
            if (a.second > 0.0) move(out, kids[1], d.plan, a.second);
          } else {
            uniform_over(out, choices, d.plan);
          }
          return;
        case BranchRule::kFixed:
          for (int e : order_[v]) {
            if (has_edge(choices, e)) {
              move(out, e, d.plan);
              return;
            }
          }
          wait(out, d.plan);
          return;
      }
    }
    const int up = tree_.parent_edge(v);
    if (up < 0) {
      wait(out, d.plan);
    } else if (has_edge(d.active, up)) {
      move(out, up, d.plan);
    } else {
      wait(out, d.plan);
    }
  }

  RootedGraph g_;
  TreeView tree_;
  BranchRule rule_;
  std::vector<BranchWeights> alpha_;
  std::vector<std::vector<int>> order_;
};

// ---------------------------------------------------------------------------

struct SimpleTreeEdges {
  int e1 = -1, e2 = -1, e21 = -1, e22 = -1;
  int v2 = -1;
};

std::optional<SimpleTreeEdges> match_simple_tree(const TreeView& t) {
  const RootedGraph& g = t.graph();
  if (g.num_edges() != 4) return std::nullopt;
  const auto top = t.children(t.root());
  if (top.size() != 2) return std::nullopt;
  for (int i = 0; i < 2; ++i) {
    if (!t.is_leaf_edge(top[i])) continue;
    const auto below = t.children(t.head(top[1 - i]));
    if (below.size() == 2 && t.is_leaf_edge(below[0]) && t.is_leaf_edge(below[1])) {
      return SimpleTreeEdges{top[i], top[1 - i], below[0], below[1], t.head(top[1 - i])};
    }
  }
  return std::nullopt;
}

class SimpleLowPPolicy final : public DfsPolicy {
 public:
  SimpleLowPPolicy(const RootedGraph& g, double p) : DfsPolicy(g, BranchRule::kUniform), p_(p) {
    auto m = match_simple_tree(tree_);
    if (!m) throw DomainError("the low-p strategy is defined on the simple binary tree only");
    s_ = *m;
    zeta_ = simple_tree_zeta(p);
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    const int v = d.position;
    const bool f1 = has_edge(d.visited, s_.e1);
    const bool f21 = has_edge(d.visited, s_.e21);
    const bool f22 = has_edge(d.visited, s_.e22);
    const int found = int(f1) + int(f21) + int(f22);
    const int root = g_.root();

    if (found >= 2) {
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    if (found == 0) {
      if (v == root) {
        if (has_edge(d.active, s_.e1)) {
          move(out, s_.e1, d.plan);
        } else if (has_edge(d.active, s_.e2) && !has_edge(d.visited, s_.e2)) {
          move(out, s_.e2, d.plan);
        } else {
          wait(out, d.plan);
        }
        return;
      }
      if (v == s_.v2) {
        const EdgeMask lower = (edge_bit(s_.e21) | edge_bit(s_.e22)) & d.active;
        if (lower != 0) {
          uniform_over(out, lower, d.plan);
        } else {
          wait(out, d.plan);
        }
        return;
      }
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    if (f1) {
      dfs_step(d, out);
      return;
    }
    // exactly one of the two lower leaves is done
    const int other = f21 ? s_.e22 : s_.e21;
    if (v == s_.v2) {
      if (has_edge(d.active, other)) {
        move(out, other, d.plan);
      } else if (has_edge(d.active, s_.e2)) {
        if (zeta_ > 0.0) wait(out, d.plan, zeta_);
        if (zeta_ < 1.0) move(out, s_.e2, d.plan, 1.0 - zeta_);
      } else {
        wait(out, d.plan);
      }
      return;
    }
    if (v == root) {
      // left v2 behind on purpose: head for e1
      if (has_edge(d.active, s_.e1)) {
        move(out, s_.e1, d.plan);
      } else {
        wait(out, d.plan);
      }
      return;
    }
    if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
  }

  json descriptor() const override { return {{"kind", "simple-low-p"}, {"zeta", zeta_}, {"p", p_}}; }

 private:
  double p_;
  double zeta_ = 1.0;
  SimpleTreeEdges s_;
};

// ---------------------------------------------------------------------------

class ScriptedPolicy final : public SearcherPolicy {
 public:
  ScriptedPolicy(const RootedGraph& g, std::vector<ScriptNode> nodes, std::string label)
      : g_(g), nodes_(std::move(nodes)), label_(std::move(label)) {
    if (nodes_.empty()) throw DomainError("scripted plan has no nodes");
    for (const auto& n : nodes_) {
      for (auto [e, next] : n.options) {
        if (e < 0 || e >= g_.num_edges() || next < 0 || next >= int(nodes_.size())) {
          throw DomainError("scripted plan refers to a missing edge or node");
        }
      }
    }
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    out.clear();
    const auto& node = nodes_.at(d.plan);
    if (node.options.empty()) {
      if (!cover_nearest(g_, d, d.plan, out)) wait(out, d.plan);
      return;
    }
    int n_active = 0;
    for (auto [e, next] : node.options) {
      if (!g_.edge(e).touches(d.position)) {
        throw DomainError("scripted option " + g_.edge(e).id + " is not incident to " +
                          g_.vertex_name(d.position));
      }
      n_active += has_edge(d.active, e);
    }
    if (n_active == 0) {
      wait(out, d.plan);
      return;
    }
    for (auto [e, next] : node.options) {
      if (has_edge(d.active, e)) move(out, e, next, 1.0 / n_active);
    }
  }

  json descriptor() const override { return {{"kind", label_}, {"nodes", nodes_.size()}}; }

 private:
  RootedGraph g_;
  std::vector<ScriptNode> nodes_;
  std::string label_;
};

// ---------------------------------------------------------------------------

class MixturePolicy final : public SearcherPolicy {
 public:
  MixturePolicy(std::vector<PolicyPtr> parts, std::vector<double> weights)
      : parts_(std::move(parts)), weights_(std::move(weights)) {
    if (parts_.empty() || parts_.size() != weights_.size()) {
      throw DomainError("mixture needs one weight per component");
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("mixture weights must have positive sum");
    for (double& w : weights_) {
      if (w < 0.0) throw DomainError("mixture weights must be non-negative");
      w /= total;
    }
  }

  std::vector<PlanStart> initial_plans() const override {
    const std::int64_t k = parts_.size();
    std::vector<PlanStart> out;
    for (std::int64_t i = 0; i < k; ++i) {
      if (weights_[i] == 0.0) continue;
      for (const auto& s : parts_[i]->initial_plans()) {
        out.push_back({s.plan * k + i, s.probability * weights_[i]});
      }
    }
    return out;
  }

  void decide(const DecisionPoint& d, std::vector<Action>& out) const override {
    const std::int64_t k = parts_.size();
    const std::int64_t i = d.plan % k;
    DecisionPoint inner = d;
    inner.plan = d.plan / k;
    parts_[i]->decide(inner, out);
    for (auto& a : out) {
      if (a.next_plan < 0) throw DomainError("mixture components need non-negative plans");
      a.next_plan = a.next_plan * k + i;
    }
  }

  json descriptor() const override {
    json comps = json::array();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      comps.push_back({{"weight", weights_[i]}, {"policy", parts_[i]->descriptor()}});
    }
    return {{"kind", "mixture"}, {"components", comps}};
  }

 private:
  std::vector<PolicyPtr> parts_;
  std::vector<double> weights_;
};

}  // namespace

// ---------------------------------------------------------------------------

bool cover_nearest(const RootedGraph& g, const DecisionPoint& d, std::int64_t next_plan,
                   std::vector<Action>& out) {
  const EdgeMask unvisited = g.all_edges() & ~d.visited;
  if (unvisited == 0) return false;
  const EdgeMask here = g.incident_mask(d.position) & unvisited;
  if (here != 0) {
    if ((here & d.active) != 0) {
      move(out, lowest(here & d.active), next_plan);
    } else {
      wait(out, next_plan);
    }
    return true;
  }
  // multi-source BFS from every vertex that touches an unvisited edge
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<int> queue;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if ((g.incident_mask(v) & unvisited) != 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int f : g.incident(x)) {
      const int y = g.edge(f).other(x);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  for (EdgeMask m = d.active & g.incident_mask(d.position); m != 0; m &= m - 1) {
    const int e = lowest(m);
    if (dist[g.edge(e).other(d.position)] < dist[d.position]) {
      move(out, e, next_plan);
      return true;
    }
  }
  wait(out, next_plan);
  return true;
}

PolicyPtr ucps(const RootedGraph& g) {
  return std::make_shared<WalkPolicy>(g, chinese_postman_tours(g), "ucps");
}

PolicyPtr fixed_walk(const RootedGraph& g, Walk walk, int start) {
  walk_vertices(g, walk, start < 0 ? g.root() : start);  // validates the chain
  return std::make_shared<WalkPolicy>(g, std::vector<Walk>{std::move(walk)}, "walk");
}

PolicyPtr ues(const RootedGraph& g) { return std::make_shared<EulerianPolicy>(g, std::vector<int>{}); }

PolicyPtr priority_es(const RootedGraph& g, std::vector<int> priority) {
  std::vector<int> sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(g.num_edges());
  std::iota(identity.begin(), identity.end(), 0);
  if (sorted != identity) throw DomainError("priority must be a permutation of the edges");
  return std::make_shared<EulerianPolicy>(g, std::move(priority));
}

std::vector<PolicyPtr> enumerate_pure_es(const RootedGraph& g, std::size_t cap) {
  const auto par = parallel_structure(g);
  if (!par || par->lengths.size() % 2 != 0) {
    throw DomainError("pure Eulerian plans are enumerated on parallel Eulerian graphs");
  }
  std::vector<int> rank(par->lengths.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(rank);
  while (std::next_permutation(rank.begin(), rank.end()));
  const std::size_t total = perms.size() * perms.size();
  std::vector<PolicyPtr> out;
  // when there are too many pairs, walk through them with a fixed odd stride
  const std::size_t count = std::min(total, cap);
  const std::size_t stride = total <= cap ? 1 : (total / cap) | 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t idx = (k * stride) % total;
    out.push_back(std::make_shared<ParallelPolicy>(g, perms[idx / perms.size()],
                                                   perms[idx % perms.size()]));
  }
  return out;
}

PolicyPtr parallel_uniform(const RootedGraph& g) {
  return std::make_shared<ParallelPolicy>(g, std::vector<int>{}, std::vector<int>{});
}

PolicyPtr udfs(const RootedGraph& g) { return std::make_shared<DfsPolicy>(g, BranchRule::kUniform); }

PolicyPtr bdfs(const RootedGraph& g, double p) {
  auto pol = std::make_shared<DfsPolicy>(g, BranchRule::kBiased);
  const TreeView t(g);
  pol->set_alpha(bdfs_weights(t, p).at_vertex);
  return pol;
}

PolicyPtr pure_dfs(const RootedGraph& g, const std::map<int, std::vector<int>>& order) {
  auto pol = std::make_shared<DfsPolicy>(g, BranchRule::kFixed);
  const TreeView t(g);
  std::vector<std::vector<int>> full(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto kids = t.children(v);
    full[v].assign(kids.begin(), kids.end());
    if (auto it = order.find(v); it != order.end()) {
      auto want = it->second;
      std::sort(want.begin(), want.end());
      auto have = full[v];
      std::sort(have.begin(), have.end());
      if (want != have) {
        throw DomainError("order at " + g.vertex_name(v) + " must list exactly its child edges");
      }
      full[v] = it->second;
    }
  }
  pol->set_order(std::move(full));
  return pol;
}

std::vector<PolicyPtr> enumerate_pure_dfs(const RootedGraph& g, std::size_t cap) {
  const TreeView t(g);
  std::vector<int> branching;
  for (int v : t.preorder()) {
    if (t.children(v).size() > 1) branching.push_back(v);
  }
  std::vector<std::vector<std::vector<int>>> choices;
  std::size_t total = 1;
  for (int v : branching) {
    std::vector<int> kids(t.children(v).begin(), t.children(v).end());
    std::sort(kids.begin(), kids.end());
    std::vector<std::vector<int>> perms;
    do perms.push_back(kids);
    while (std::next_permutation(kids.begin(), kids.end()));
    total *= perms.size();
    if (total > cap) throw CapacityError("too many pure depth-first searches to enumerate");
    choices.push_back(std::move(perms));
  }
  std::vector<PolicyPtr> out;
  std::vector<std::size_t> digit(branching.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::map<int, std::vector<int>> order;
    for (std::size_t i = 0; i < branching.size(); ++i) order[branching[i]] = choices[i][digit[i]];
    out.push_back(pure_dfs(g, order));
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < choices[i].size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

PolicyPtr simple_tree_low_p_policy(const RootedGraph& g, double p) {
  return std::make_shared<SimpleLowPPolicy>(g, p);
}

PolicyPtr scripted(const RootedGraph& g, std::vector<ScriptNode> nodes, std::string label) {
  return std::make_shared<ScriptedPolicy>(g, std::move(nodes), std::move(label));
}

PolicyPtr mixture(std::vector<PolicyPtr> parts, std::vector<double> weights) {
  return std::make_shared<MixturePolicy>(std::move(parts), std::move(weights));
}

PolicyPtr policy_from_descriptor(const RootedGraph& g, const ActivationParams& params,
                                 const json& desc) {
  const std::string kind = desc.is_string() ? desc.get<std::string>()
                                            : desc.at("kind").get<std::string>();
  auto uniform_p = [&] {
    if (!params.uniform()) throw DomainError(kind + " needs a uniform activation probability");
    return params[0];
  };
  if (kind == "udfs") return udfs(g);
  if (kind == "bdfs") return bdfs(g, uniform_p());
  if (kind == "ucps") return ucps(g);
  if (kind == "ues") return ues(g);
  if (kind == "parallel-uniform") return parallel_uniform(g);
  if (kind == "simple-low-p") return simple_tree_low_p_policy(g, uniform_p());
  if (kind == "pure-dfs") {
    std::map<int, std::vector<int>> order;
    if (desc.is_object() && desc.contains("order")) {
      for (const auto& [vname, edges] : desc.at("order").items()) {
        std::vector<int> list;
        for (const auto& id : edges) list.push_back(g.edge_index(id.get<std::string>()));
        order[g.vertex_index(vname)] = std::move(list);
      }
    }
    return pure_dfs(g, order);
  }
  throw DomainError("unknown policy kind '" + kind + "'");
}

}  // namespace ssg
