#ifndef CONGA_TESTS_HELPERS_H_
#define CONGA_TESTS_HELPERS_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "conga/graph.h"

namespace conga::testing {

inline Graph make_graph(int n, std::vector<Edge> edges) {
  double w = 1.0;
  for (const Edge& e : edges) w = std::max(w, e.cap);
  return Graph(n, std::move(edges), w);
}

// Edges 01, 12, 23, 30 with capacities 1, 2, 3, 4.
inline Graph four_cycle() { return make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {0, 3, 4}}); }

inline Graph unit_cycle4() { return make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}); }

inline Graph complete_graph(int n, double cap = 1.0) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, cap});
  return make_graph(n, std::move(edges));
}

inline Graph path_graph(int n, double cap = 1.0) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, cap});
  return make_graph(n, std::move(edges));
}

// Two K_k joined by one bridge (0, k).
inline Graph joined_cliques(int k, double bridge = 1.0) {
  std::vector<Edge> edges;
  for (int side = 0; side < 2; ++side)
    for (int u = 0; u < k; ++u)
      for (int v = u + 1; v < k; ++v) edges.push_back({side * k + u, side * k + v, 1.0});
  edges.push_back({0, k, bridge});
  return make_graph(2 * k, std::move(edges));
}

// Random spanning tree plus extra edges, integer capacities in [1, max_cap].
inline Graph random_connected(int n, std::mt19937_64& rng, int max_cap = 1, int extra = -1) {
  std::uniform_int_distribution<int> cap(1, max_cap);
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.push_back({u, v, static_cast<double>(cap(rng))});
  }
  if (extra < 0) extra = n;
  if (n >= 2) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < extra; ++i) {
      int u = pick(rng), v = pick(rng);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      edges.push_back({u, v, static_cast<double>(cap(rng))});
    }
  }
  return Graph(n, std::move(edges), static_cast<double>(max_cap));
}

inline double boundary_by_scan(const Graph& g, const std::vector<char>& in) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    if (in[e.u] != in[e.v]) total += e.cap;
  return total;
}

// Minimum s-t cut by enumerating every vertex subset.
inline double brute_min_cut(const Graph& g, Vertex s, Vertex t) {
  const int n = g.n();
  double best = INFINITY;
  std::vector<char> in(n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    for (int v = 0; v < n; ++v) in[v] = mask >> v & 1;
    best = std::min(best, boundary_by_scan(g, in));
  }
  return best;
}

// Random demand balanced over all vertices.
inline std::vector<double> random_demand(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> b(n);
  double sum = 0.0;
  for (double& x : b) sum += (x = u(rng));
  for (double& x : b) x -= sum / n;
  return b;
}

}  // namespace conga::testing

#endif  // CONGA_TESTS_HELPERS_H_
