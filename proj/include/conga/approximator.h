#ifndef CONGA_APPROXIMATOR_H_
#define CONGA_APPROXIMATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "conga/graph.h"

namespace conga {

struct Hierarchy;

struct ForestNode {
  int lo = 0, hi = 0;  // leaf-order range [lo, hi)
  int level = 1;       // highest level whose refinement contains this set
  int parent = -1;
  double delta = 0.0;  // boundary capacity
  bool operator==(const ForestNode&) const = default;
};

// The union of the common refinements R_{>=i}, stored as a forest whose
// nodes are contiguous ranges of one vertex permutation. Nodes are in
// preorder, so parents precede children.
class LaminarApproximator {
 public:
  int n = 0;
  int L = 0;
  std::vector<Vertex> order;  // leaf order
  std::vector<ForestNode> nodes;
  uint64_t graph_checksum = 0;
  double alpha = 1.0;
  double beta = 1.0;
  double quality_bound = 1.0;
  int64_t K = 0;  // sum of stored node sizes

  VertexSet members(int node) const;
  int size(int node) const { return nodes[node].hi - nodes[node].lo; }
  bool operator==(const LaminarApproximator&) const = default;
};

// R_{>=i} for i = 1..L (index 0 is R_{>=1}).
std::vector<Partition> refinements(const std::vector<Partition>& levels);
Partition common_refinement(const std::vector<Partition>& levels);

LaminarApproximator assemble(const Graph& g, const std::vector<Partition>& levels,
                             double alpha, double beta);
LaminarApproximator assemble(const Graph& g, const Hierarchy& h);

// max over stored C of |b(C)|/δC; +inf when a closed cluster (δC = 0)
// carries net demand above the tolerance. visits counts touched values.
double estimate_congestion(const LaminarApproximator& approx, const Demand& b,
                           double tol, int64_t* visits = nullptr);

// Batch query; the parallel path is checked against the serial one in tests.
std::vector<double> estimate_congestion_batch(const LaminarApproximator& approx,
                                              const std::vector<Demand>& demands, double tol);
std::vector<double> estimate_congestion_batch_serial(const LaminarApproximator& approx,
                                                     const std::vector<Demand>& demands,
                                                     double tol);

struct RestrictedCollection {
  std::vector<VertexSet> sets;  // nonempty C ∩ A, then the three markers
  Vertex x_marker = -1, s_marker = -1, t_marker = -1;
};

// Markers use ids n, n+1, n+2.
RestrictedCollection restrict_to(const LaminarApproximator& approx, const VertexSet& a);

bool is_laminar(const std::vector<VertexSet>& sets);

std::string serialize(const LaminarApproximator& approx);
LaminarApproximator deserialize(const std::string& bytes);

}  // namespace conga

#endif  // CONGA_APPROXIMATOR_H_
