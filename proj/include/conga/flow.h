#ifndef CONGA_FLOW_H_
#define CONGA_FLOW_H_

#include <vector>

#include "conga/graph.h"

namespace conga {

// Signed per-edge flow; positive means from edge.u to edge.v (u < v).
struct EdgeFlow {
  std::vector<double> value;

  EdgeFlow() = default;
  explicit EdgeFlow(int m) : value(m, 0.0) {}
  int m() const { return static_cast<int>(value.size()); }
  EdgeFlow& operator+=(const EdgeFlow& o);
  EdgeFlow& operator*=(double s);
};

// Net inflow at every vertex.
Demand net_inflow(const Graph& g, const EdgeFlow& f);
double congestion(const Graph& g, const EdgeFlow& f);

struct RouteCheck {
  bool ok = false;
  double congestion = 0.0;
  double max_violation = 0.0;
};

// Checks that f's net inflow equals b within the graph tolerance.
RouteCheck route_check(const Graph& g, const EdgeFlow& f, const Demand& b);

struct Path {
  std::vector<Vertex> vertices;  // at least two
  std::vector<EdgeId> edges;     // edges[i] joins vertices[i], vertices[i+1]
  double capacity = 0.0;
  Vertex start() const { return vertices.front(); }
  Vertex end() const { return vertices.back(); }
};

struct PathDecomposition {
  std::vector<Path> paths;
  // Start totals per vertex.
  VertexWeighting starts(int n) const;
  VertexWeighting ends(int n) const;
};

// Cancels circulations in place, leaving an acyclic flow with the same net
// inflow at every vertex.
void cancel_cycles(const Graph& g, EdgeFlow& f);

// Cancels cycles, then splits the remainder into source-to-sink paths.
PathDecomposition path_decompose(const Graph& g, const EdgeFlow& f);

EdgeFlow accumulate(const Graph& g, const PathDecomposition& pd);

// Shrinks paths so that each v starts exactly quota(v). Throws InternalError
// naming v when fewer than quota(v) - tol start there.
PathDecomposition trim_paths(const PathDecomposition& pd, const VertexWeighting& quota,
                             double tol);

}  // namespace conga

#endif  // CONGA_FLOW_H_
