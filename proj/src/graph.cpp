#include "ssg/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>

#include "ssg/errors.hpp"

namespace ssg {

RootedGraph::RootedGraph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
                         std::string_view root)
    : vertex_names_(std::move(vertices)) {
  if (vertex_names_.empty()) throw DomainError("graph needs at least one vertex");
  if (edges.empty()) throw DomainError("graph needs at least one edge");
  if (edges.size() > static_cast<std::size_t>(kMaxEdges)) {
    throw CapacityError("graph has " + std::to_string(edges.size()) + " edges, limit is " +
                        std::to_string(kMaxEdges));
  }
  for (int i = 0; i < num_vertices(); ++i) {
    if (!vertex_lookup_.emplace(vertex_names_[i], i).second) {
      throw DomainError("duplicate vertex '" + vertex_names_[i] + "'");
    }
  }
  auto root_it = vertex_lookup_.find(std::string(root));
  if (root_it == vertex_lookup_.end()) {
    throw DomainError("root '" + std::string(root) + "' is not a vertex");
  }
  root_ = root_it->second;

  incident_.resize(vertex_names_.size());
  incident_mask_.assign(vertex_names_.size(), 0);
  for (const auto& spec : edges) {
    const int idx = static_cast<int>(edges_.size());
    if (!edge_lookup_.emplace(spec.id, idx).second) {
      throw DomainError("duplicate edge id '" + spec.id + "'");
    }
    const int u = vertex_index(spec.u);
    const int v = vertex_index(spec.v);
    if (u == v) throw DomainError("edge '" + spec.id + "' is a self-loop");
    edges_.push_back(Edge{spec.id, u, v});
    incident_[u].push_back(idx);
    incident_[v].push_back(idx);
    incident_mask_[u] |= edge_bit(idx);
    incident_mask_[v] |= edge_bit(idx);
  }

  std::vector<char> seen(vertex_names_.size(), 0);
  std::deque<int> queue{root_};
  seen[root_] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int e : incident_[x]) {
      const int y = edges_[e].other(x);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  if (reached != num_vertices()) throw DomainError("graph is not connected");
}

int RootedGraph::vertex_index(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw DomainError("unknown vertex '" + std::string(name) + "'");
}

int RootedGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw DomainError("unknown edge '" + std::string(id) + "'");
}

std::optional<int> RootedGraph::find_vertex(std::string_view name) const {
  auto it = vertex_lookup_.find(std::string(name));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> RootedGraph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

int RootedGraph::max_degree() const {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

EdgeMask RootedGraph::all_edges() const {
  return num_edges() == 64 ? ~EdgeMask{0} : edge_bit(num_edges()) - 1;
}

std::vector<int> neighbors(const RootedGraph& g, EdgeMask active, int v) {
  if (v < 0 || v >= g.num_vertices()) {
    throw DomainError("vertex index " + std::to_string(v) + " out of range");
  }
  std::vector<int> out{v};
  for (int e : g.incident(v)) {
    if (has_edge(active, e)) out.push_back(g.edge(e).other(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GraphClass classify(const RootedGraph& g) {
  if (g.num_edges() == g.num_vertices() - 1) return GraphClass::kTree;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) % 2 != 0) return GraphClass::kOther;
  }
  return GraphClass::kEulerian;
}

std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::kTree:
      return "tree";
    case GraphClass::kEulerian:
      return "eulerian";
    case GraphClass::kOther:
      return "other";
  }
  return "other";
}

std::vector<int> walk_vertices(const RootedGraph& g, const Walk& walk, int start) {
  std::vector<int> out{start};
  int at = start;
  for (int e : walk) {
    const Edge& edge = g.edge(e);
    if (!edge.touches(at)) {
      throw DomainError("walk leaves vertex '" + g.vertex_name(at) + "' through non-incident edge '" +
                        edge.id + "'");
    }
    at = edge.other(at);
    out.push_back(at);
  }
  return out;
}

namespace {

constexpr int kMaxPostmanEdges = 18;

// Distances (in traversals) from every (vertex, covered) state to the goal
// state (root, all covered), by breadth-first search over the reversed moves.
class CoverDistances {
 public:
  explicit CoverDistances(const RootedGraph& g) : g_(g), masks_(std::size_t{1} << g.num_edges()) {
    dist_.assign(masks_ * g.num_vertices(), -1);
    const auto full = static_cast<std::size_t>(g.all_edges());
    std::deque<std::size_t> queue;
    const std::size_t goal = key(g.root(), full);
    dist_[goal] = 0;
    queue.push_back(goal);
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const int w = static_cast<int>(k / masks_);
      const std::size_t m = k % masks_;
      for (int f : g.incident(w)) {
        if (!has_edge(m, f)) continue;
        const int u = g.edge(f).other(w);
        for (std::size_t prev : {m, m & ~static_cast<std::size_t>(edge_bit(f))}) {
          const std::size_t pk = key(u, prev);
          if (dist_[pk] < 0) {
            dist_[pk] = dist_[k] + 1;
            queue.push_back(pk);
          }
        }
      }
    }
  }

  int at(int v, std::size_t mask) const { return dist_[key(v, mask)]; }

 private:
  std::size_t key(int v, std::size_t mask) const {
    return static_cast<std::size_t>(v) * masks_ + mask;
  }

  const RootedGraph& g_;
  std::size_t masks_;
  std::vector<int> dist_;
};

void check_postman_size(const RootedGraph& g) {
  if (g.num_edges() > kMaxPostmanEdges) {
    throw CapacityError("covering-walk search is limited to " + std::to_string(kMaxPostmanEdges) +
                        " edges, graph has " + std::to_string(g.num_edges()));
  }
}

}  // namespace

int chinese_postman_length(const RootedGraph& g) {
  check_postman_size(g);
  CoverDistances dist(g);
  return dist.at(g.root(), 0);
}

std::vector<Walk> chinese_postman_tours(const RootedGraph& g, std::size_t cap) {
  check_postman_size(g);
  CoverDistances dist(g);
  std::vector<Walk> tours;
  Walk current;
  std::function<void(int, std::size_t)> extend = [&](int at, std::size_t covered) {
    const int remaining = dist.at(at, covered);
    if (remaining == 0) {
      if (tours.size() >= cap) {
        throw CapacityError("more than " + std::to_string(cap) + " Chinese postman tours");
      }
      tours.push_back(current);
      return;
    }
    for (int f : g.incident(at)) {
      const int next = g.edge(f).other(at);
      const std::size_t next_cover = covered | static_cast<std::size_t>(edge_bit(f));
      if (dist.at(next, next_cover) == remaining - 1) {
        current.push_back(f);
        extend(next, next_cover);
        current.pop_back();
      }
    }
  };
  extend(g.root(), 0);
  return tours;
}

std::vector<Walk> eulerian_cycles(const RootedGraph& g, std::size_t cap) {
  if (classify(g) != GraphClass::kEulerian) {
    throw DomainError("graph is not Eulerian");
  }
  std::vector<Walk> cycles;
  Walk current;
  const EdgeMask all = g.all_edges();
  std::function<void(int, EdgeMask)> extend = [&](int at, EdgeMask used) {
    if (used == all) {
      if (at != g.root()) return;
      if (cycles.size() >= cap) {
        throw CapacityError("more than " + std::to_string(cap) + " Eulerian cycles");
      }
      cycles.push_back(current);
      return;
    }
    for (int f : g.incident(at)) {
      if (has_edge(used, f)) continue;
      current.push_back(f);
      extend(g.edge(f).other(at), used | edge_bit(f));
      current.pop_back();
    }
  };
  extend(g.root(), 0);
  return cycles;
}

TreeView::TreeView(const RootedGraph& g) : graph_(&g) {
  if (classify(g) != GraphClass::kTree) throw DomainError("graph is not a tree");
  const int n = g.num_vertices();
  parent_edge_.assign(n, -1);
  children_.assign(n, {});
  head_.assign(g.num_edges(), -1);
  below_vertex_.assign(n, 0);
  below_edge_.assign(g.num_edges(), 0);

  std::vector<char> seen(n, 0);
  std::vector<int> stack{g.root()};
  seen[g.root()] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    preorder_.push_back(v);
    for (int e : g.incident(v)) {
      const int w = g.edge(e).other(v);
      if (seen[w]) continue;
      seen[w] = 1;
      parent_edge_[w] = e;
      head_[e] = w;
      children_[v].push_back(e);
    }
    // Push in reverse so that preorder visits children in edge order.
    for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) {
      stack.push_back(head_[*it]);
    }
  }
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    const int v = *it;
    for (int e : children_[v]) {
      below_edge_[e] = edge_bit(e) | below_vertex_[head_[e]];
      below_vertex_[v] |= below_edge_[e];
      if (children_[head_[e]].empty()) leaf_edges_ |= edge_bit(e);
    }
  }
}

int TreeView::parent(int v) const {
  const int e = parent_edge_.at(v);
  return e < 0 ? -1 : tail(e);
}

bool TreeView::is_binary() const {
  return std::all_of(children_.begin(), children_.end(),
                     [](const auto& c) { return c.size() <= 2; });
}

std::vector<int> TreeView::path_from_root(int e) const {
  std::vector<int> path;
  for (int cur = e; cur >= 0; cur = parent_edge_[tail(cur)]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<ParallelDescriptor> parallel_structure(const RootedGraph& g) {
  const int origin = g.root();
  const int n = g.degree(origin);
  if (n < 2) return std::nullopt;
  const bool all_degree_two = [&] {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) != 2) return false;
    }
    return true;
  }();

  ParallelDescriptor desc;
  desc.origin = origin;
  if (all_degree_two) {
    // A circle: split it at the vertex opposite the root.
    const int length = g.num_edges();
    if (length < 2) return std::nullopt;
    std::vector<int> around;
    int at = origin;
    int prev_edge = -1;
    for (int step = 0; step < length; ++step) {
      int next_edge = -1;
      for (int e : g.incident(at)) {
        if (e != prev_edge) {
          next_edge = e;
          break;
        }
      }
      around.push_back(next_edge);
      at = g.edge(next_edge).other(at);
      prev_edge = next_edge;
    }
    if (at != origin) return std::nullopt;
    const int first = (length + 1) / 2;
    std::vector<int> forward(around.begin(), around.begin() + first);
    std::vector<int> back(around.rbegin(), around.rbegin() + (length - first));
    desc.destination = walk_vertices(g, forward, origin).back();
    desc.paths = {forward, back};
    desc.lengths = {static_cast<int>(forward.size()), static_cast<int>(back.size())};
    return desc;
  }

  for (int start : g.incident(origin)) {
    std::vector<int> path{start};
    int at = g.edge(start).other(origin);
    int prev = start;
    while (g.degree(at) == 2 && at != origin) {
      const auto inc = g.incident(at);
      const int next = inc[0] == prev ? inc[1] : inc[0];
      path.push_back(next);
      prev = next;
      at = g.edge(next).other(at);
    }
    if (at == origin) return std::nullopt;
    if (desc.destination < 0) desc.destination = at;
    if (at != desc.destination) return std::nullopt;
    desc.lengths.push_back(static_cast<int>(path.size()));
    desc.paths.push_back(std::move(path));
  }
  if (g.degree(desc.destination) != n) return std::nullopt;
  int total = 0;
  for (int len : desc.lengths) total += len;
  if (total != g.num_edges()) return std::nullopt;
  return desc;
}

}  // namespace ssg
