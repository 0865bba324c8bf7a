#ifndef CONGA_GRAPH_H_
#define CONGA_GRAPH_H_

#include <span>
#include <vector>

#include "conga/common.h"

namespace conga {

struct Edge {
  Vertex u;  // always u < v
  Vertex v;
  double cap;
};

// Undirected capacitated multigraph. Immutable once built.
class Graph {
 public:
  Graph() = default;
  // Auxiliary graphs may carry capacities below 1; set check_range for input
  // graphs so that every capacity lies in [1, W].
  Graph(int n, std::vector<Edge> edges, double W, bool check_range = true);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  double W() const { return W_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeId> incident(Vertex v) const {
    return {inc_.data() + inc_start_[v], inc_.data() + inc_start_[v + 1]};
  }
  Vertex other(EdgeId e, Vertex v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }
  double degree(Vertex v) const { return degree_[v]; }
  double total_capacity() const { return total_capacity_; }
  double tau() const { return conservation_tolerance(total_capacity_); }

 private:
  int n_ = 0;
  double W_ = 1.0;
  std::vector<Edge> edges_;
  std::vector<int> inc_start_{0};
  std::vector<EdgeId> inc_;
  std::vector<double> degree_;
  double total_capacity_ = 0.0;
};

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> members);
  static VertexSet range(int n);

  const std::vector<Vertex>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  Vertex operator[](int i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::vector<char> mask(int n) const;
  bool operator==(const VertexSet&) const = default;
  auto operator<=>(const VertexSet&) const = default;

 private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

// Disjoint clusters covering 0..n-1.
class Partition {
 public:
  Partition() = default;
  // Throws InputError unless clusters are nonempty, disjoint and cover V.
  Partition(int n, std::vector<VertexSet> clusters);
  static Partition singletons(int n);
  static Partition whole(int n);
  // Cluster ids are taken as given; ids must be dense 0..k-1.
  static Partition from_labels(const std::vector<int>& label);

  int n() const { return static_cast<int>(cluster_of_.size()); }
  int size() const { return static_cast<int>(clusters_.size()); }
  const std::vector<VertexSet>& clusters() const { return clusters_; }
  const VertexSet& cluster(int i) const { return clusters_[i]; }
  int cluster_of(Vertex v) const { return cluster_of_[v]; }
  const std::vector<int>& labels() const { return cluster_of_; }
  // Canonical form: clusters ordered by smallest member.
  Partition canonical() const;
  bool operator==(const Partition& o) const;

 private:
  std::vector<VertexSet> clusters_;
  std::vector<int> cluster_of_;
};

// Edge subset as a membership mask over edge ids.
using EdgeMask = std::vector<char>;

double boundary_capacity(const Graph& g, const VertexSet& c);
double boundary_capacity(const Graph& g, const std::vector<char>& in_c);
double restricted_degree(const Graph& g, const EdgeMask& f, Vertex v);
std::vector<EdgeId> partition_boundary(const Graph& g, const Partition& p);
EdgeMask partition_boundary_mask(const Graph& g, const Partition& p);
// Total capacity of ∂P.
double partition_boundary_capacity(const Graph& g, const Partition& p);
// deg_F(v) for all v.
VertexWeighting restricted_degrees(const Graph& g, const EdgeMask& f);
// c_G({v}, C) for every v.
VertexWeighting capacity_into(const Graph& g, const std::vector<char>& in_c);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;     // local id -> parent id
  std::vector<Vertex> from_parent;   // parent id -> local id or -1
  std::vector<EdgeId> edge_to_parent;
};

Subgraph induced_subgraph(const Graph& g, const VertexSet& a);

// Connected components as a partition.
Partition connected_components(const Graph& g);

// 64-bit FNV-1a over n, W and the edge list.
uint64_t graph_checksum(const Graph& g);

}  // namespace conga

#endif  // CONGA_GRAPH_H_
