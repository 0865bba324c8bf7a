#ifndef CONGA_MAXFLOW_H_
#define CONGA_MAXFLOW_H_

#include <vector>

#include "conga/flow.h"
#include "conga/graph.h"

namespace conga {

// Residual network for Dinic's blocking-flow max-flow on real capacities.
// Arcs come in pairs (2k, 2k+1); an undirected edge is a pair where both
// directions carry the edge capacity.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1), level_(n), iter_(n) {}

  int n() const { return static_cast<int>(head_.size()); }
  // Returns the index of the forward arc.
  int add_arc(int u, int v, double cap, double reverse_cap = 0.0);
  int add_undirected(int u, int v, double cap) { return add_arc(u, v, cap, cap); }

  // Augments until no s-t path has residual above eps.
  double max_flow(int s, int t, double eps);
  // Net flow on the forward direction of arc a.
  double flow(int a) const { return flow_[a]; }
  double residual(int a) const { return cap_[a] - flow_[a]; }
  // Vertices reachable from s through arcs with residual above eps.
  std::vector<char> source_side(int s, double eps) const;

 private:
  bool bfs(int s, int t, double eps);
  double dfs(int v, int t, double pushed, double eps);

  std::vector<int> head_, next_, to_;
  std::vector<double> cap_, flow_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

struct MaxFlowResult {
  double value = 0.0;
  EdgeFlow flow;   // on the input graph
  VertexSet cut;   // source side of a minimum cut
};

// Exact s-t max-flow on an undirected graph; the returned cut is the set of
// vertices reachable from s in the final residual graph.
MaxFlowResult exact_max_flow(const Graph& g, Vertex s, Vertex t);

}  // namespace conga

#endif  // CONGA_MAXFLOW_H_
