#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ssg {

// Bit i stands for the edge with index i. Graphs are limited to 64 edges.
using EdgeMask = std::uint64_t;
inline constexpr int kMaxEdges = 64;

inline constexpr EdgeMask edge_bit(int e) { return EdgeMask{1} << e; }
inline constexpr bool has_edge(EdgeMask m, int e) { return (m >> e) & 1U; }

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
};

struct Edge {
  std::string id;
  int u = -1;
  int v = -1;

  int other(int x) const { return x == u ? v : u; }
  bool touches(int x) const { return x == u || x == v; }
};

// Finite connected undirected multigraph with a distinguished root. Vertices
// and edges are addressed by dense indices; the string identifiers are kept for
// I/O. Edge indices follow construction order and serve as the canonical
// tie-breaking order everywhere in the library.
class RootedGraph {
 public:
  RootedGraph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
              std::string_view root);

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int root() const { return root_; }

  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }

  int vertex_index(std::string_view name) const;
  int edge_index(std::string_view id) const;
  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(std::string_view id) const;

  std::span<const int> incident(int v) const { return incident_.at(v); }
  EdgeMask incident_mask(int v) const { return incident_mask_.at(v); }
  int degree(int v) const { return static_cast<int>(incident_.at(v).size()); }
  int max_degree() const;
  EdgeMask all_edges() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  int root_ = -1;
  std::vector<std::vector<int>> incident_;
  std::vector<EdgeMask> incident_mask_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> edge_lookup_;
};

// Vertices reachable from v in one stage when the edges of `active` are
// available, v itself included (waiting is always allowed). Sorted.
std::vector<int> neighbors(const RootedGraph& g, EdgeMask active, int v);

enum class GraphClass { kTree, kEulerian, kOther };

GraphClass classify(const RootedGraph& g);
std::string_view to_string(GraphClass c);

// A rooted walk given as the sequence of traversed edge indices, starting at
// the root. Direction is implied by the start vertex.
using Walk = std::vector<int>;

// Vertices visited by `walk` starting from `start` (size walk.size() + 1).
// Throws DomainError if consecutive edges do not chain.
std::vector<int> walk_vertices(const RootedGraph& g, const Walk& walk, int start);

inline constexpr std::size_t kDefaultEnumerationCap = 500000;

// Length of a shortest closed walk from the root that covers every edge.
int chinese_postman_length(const RootedGraph& g);

// Every shortest covering closed walk from the root. A tour and its reverse are
// distinct. Throws CapacityError beyond 18 edges or `cap` tours.
std::vector<Walk> chinese_postman_tours(const RootedGraph& g,
                                        std::size_t cap = kDefaultEnumerationCap);

// Every closed walk from the root that uses each edge exactly once. Throws
// DomainError when the graph is not Eulerian.
std::vector<Walk> eulerian_cycles(const RootedGraph& g, std::size_t cap = kDefaultEnumerationCap);

// Orientation of a tree away from the root, with the subtree edge sets used by
// the cycle-time and branching-density recursions.
class TreeView {
 public:
  explicit TreeView(const RootedGraph& g);

  const RootedGraph& graph() const { return *graph_; }
  int root() const { return graph_->root(); }

  // -1 for the root.
  int parent_edge(int v) const { return parent_edge_.at(v); }
  int parent(int v) const;
  std::span<const int> children(int v) const { return children_.at(v); }
  int head(int e) const { return head_.at(e); }
  int tail(int e) const { return graph_->edge(e).other(head_.at(e)); }

  // E_v: edges of the subtree hanging below v. E_e = {e} ∪ E_head(e).
  EdgeMask subtree_edges(int v) const { return below_vertex_.at(v); }
  EdgeMask edge_subtree(int e) const { return below_edge_.at(e); }
  EdgeMask leaf_edges() const { return leaf_edges_; }
  bool is_leaf_edge(int e) const { return has_edge(leaf_edges_, e); }

  // Parents before children.
  const std::vector<int>& preorder() const { return preorder_; }
  bool is_binary() const;
  // Edge indices on the path from the root down to `e`, inclusive.
  std::vector<int> path_from_root(int e) const;

 private:
  const RootedGraph* graph_;
  std::vector<int> parent_edge_;
  std::vector<std::vector<int>> children_;
  std::vector<int> head_;
  std::vector<EdgeMask> below_vertex_;
  std::vector<EdgeMask> below_edge_;
  EdgeMask leaf_edges_ = 0;
  std::vector<int> preorder_;
};

// Two terminals O (the root) and D joined by n internally disjoint paths.
struct ParallelDescriptor {
  std::vector<int> lengths;
  int origin = -1;
  int destination = -1;
  // paths[i] lists the edges of path i from O to D.
  std::vector<std::vector<int>> paths;
};

// Recognizes a parallel graph (a circle counts as two parallel paths between
// the root and its antipode).
std::optional<ParallelDescriptor> parallel_structure(const RootedGraph& g);

// Graph generators. The root is always called "O".
RootedGraph make_line(int left, int right);
RootedGraph make_path(int length);  // root at one extremity
RootedGraph make_circle(int length);
RootedGraph make_parallel(std::span<const int> lengths);
RootedGraph make_simple_binary_tree();
// Nested parenthesis shape: "()" is a lone vertex, "(()())" a root with two
// leaf children, "(()(()()))" the simple binary tree.
RootedGraph make_tree(std::string_view shape);
// Parses "line:3,2", "circle:5", "parallel:1,1,1", "simple-binary-tree",
// "tree:(()())", "path:4".
RootedGraph generate(std::string_view spec);

}  // namespace ssg
