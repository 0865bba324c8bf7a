#include "conga/graph.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace conga {

Graph::Graph(int n, std::vector<Edge> edges, double W, bool check_range)
    : n_(n), W_(W), edges_(std::move(edges)) {
  if (n < 0) throw InputError("negative vertex count");
  std::vector<int> count(n + 1, 0);
  degree_.assign(n, 0.0);
  for (size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InputError("edge " + std::to_string(i) + " has out-of-range endpoint");
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (!(e.cap > 0.0) || !std::isfinite(e.cap))
      throw InputError("edge " + std::to_string(i) + " has nonpositive capacity");
    if (check_range && (e.cap < 1.0 || e.cap > W))
      throw InputError("edge " + std::to_string(i) + " capacity outside [1, W]");
    if (e.u > e.v) std::swap(e.u, e.v);
    ++count[e.u + 1];
    ++count[e.v + 1];
    degree_[e.u] += e.cap;
    degree_[e.v] += e.cap;
    total_capacity_ += e.cap;
  }
  inc_start_.assign(n + 1, 0);
  std::partial_sum(count.begin(), count.end(), inc_start_.begin());
  inc_.assign(2 * edges_.size(), 0);
  std::vector<int> pos(inc_start_.begin(), inc_start_.end() - 1);
  for (size_t i = 0; i < edges_.size(); ++i) {
    inc_[pos[edges_[i].u]++] = static_cast<EdgeId>(i);
    inc_[pos[edges_[i].v]++] = static_cast<EdgeId>(i);
  }
}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::range(int n) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  return VertexSet(std::move(all));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> VertexSet::mask(int n) const {
  std::vector<char> m(n, 0);
  for (Vertex v : members_) {
    if (v < 0 || v >= n) throw InputError("vertex id " + std::to_string(v) + " out of range");
    m[v] = 1;
  }
  return m;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return VertexSet(std::move(out));
}

Partition::Partition(int n, std::vector<VertexSet> clusters)
    : clusters_(std::move(clusters)), cluster_of_(n, -1) {
  int covered = 0;
  for (size_t i = 0; i < clusters_.size(); ++i) {
    if (clusters_[i].empty()) throw InputError("partition has an empty cluster");
    for (Vertex v : clusters_[i]) {
      if (v < 0 || v >= n) throw InputError("partition vertex out of range");
      if (cluster_of_[v] != -1)
        throw InputError("vertex " + std::to_string(v) + " in two clusters");
      cluster_of_[v] = static_cast<int>(i);
      ++covered;
    }
  }
  if (covered != n) throw InputError("partition does not cover every vertex");
}

Partition Partition::singletons(int n) {
  std::vector<VertexSet> c;
  c.reserve(n);
  for (Vertex v = 0; v < n; ++v) c.push_back(VertexSet({v}));
  return Partition(n, std::move(c));
}

Partition Partition::whole(int n) {
  if (n == 0) return Partition(0, {});
  return Partition(n, {VertexSet::range(n)});
}

Partition Partition::from_labels(const std::vector<int>& label) {
  int k = 0;
  for (int l : label) {
    if (l < 0) throw InputError("negative cluster label");
    k = std::max(k, l + 1);
  }
  std::vector<std::vector<Vertex>> members(k);
  for (size_t v = 0; v < label.size(); ++v) members[label[v]].push_back(static_cast<Vertex>(v));
  std::vector<VertexSet> c;
  c.reserve(k);
  for (auto& m : members) c.emplace_back(std::move(m));
  return Partition(static_cast<int>(label.size()), std::move(c));
}

Partition Partition::canonical() const {
  std::vector<VertexSet> c = clusters_;
  std::sort(c.begin(), c.end(),
            [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
  return Partition(n(), std::move(c));
}

bool Partition::operator==(const Partition& o) const {
  if (n() != o.n() || size() != o.size()) return false;
  for (const VertexSet& c : clusters_) {
    const VertexSet& d = o.cluster(o.cluster_of(c[0]));
    if (!(c == d)) return false;
  }
  return true;
}

double boundary_capacity(const Graph& g, const std::vector<char>& in_c) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    if (in_c[e.u] != in_c[e.v]) total += e.cap;
  return total;
}

double boundary_capacity(const Graph& g, const VertexSet& c) {
  return boundary_capacity(g, c.mask(g.n()));
}

double restricted_degree(const Graph& g, const EdgeMask& f, Vertex v) {
  if (static_cast<int>(f.size()) != g.m()) throw InputError("edge subset size mismatch");
  if (v < 0 || v >= g.n()) throw InputError("vertex out of range");
  double d = 0.0;
  for (EdgeId e : g.incident(v))
    if (f[e]) d += g.edge(e).cap;
  return d;
}

VertexWeighting restricted_degrees(const Graph& g, const EdgeMask& f) {
  if (static_cast<int>(f.size()) != g.m()) throw InputError("edge subset size mismatch");
  VertexWeighting d(g.n(), 0.0);
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (!f[e]) continue;
    d[g.edge(e).u] += g.edge(e).cap;
    d[g.edge(e).v] += g.edge(e).cap;
  }
  return d;
}

VertexWeighting capacity_into(const Graph& g, const std::vector<char>& in_c) {
  VertexWeighting d(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    if (in_c[e.v]) d[e.u] += e.cap;
    if (in_c[e.u]) d[e.v] += e.cap;
  }
  return d;
}

EdgeMask partition_boundary_mask(const Graph& g, const Partition& p) {
  if (p.n() != g.n()) throw InputError("partition size does not match graph");
  EdgeMask f(g.m(), 0);
  for (EdgeId e = 0; e < g.m(); ++e)
    f[e] = p.cluster_of(g.edge(e).u) != p.cluster_of(g.edge(e).v);
  return f;
}

std::vector<EdgeId> partition_boundary(const Graph& g, const Partition& p) {
  EdgeMask f = partition_boundary_mask(g, p);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (f[e]) out.push_back(e);
  return out;
}

double partition_boundary_capacity(const Graph& g, const Partition& p) {
  double total = 0.0;
  for (EdgeId e : partition_boundary(g, p)) total += g.edge(e).cap;
  return total;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& a) {
  if (a.empty()) throw InputError("induced subgraph of an empty set");
  Subgraph s;
  s.from_parent.assign(g.n(), -1);
  for (Vertex v : a) {
    if (v < 0 || v >= g.n()) throw InputError("vertex out of range");
    s.from_parent[v] = static_cast<Vertex>(s.to_parent.size());
    s.to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (s.from_parent[ed.u] < 0 || s.from_parent[ed.v] < 0) continue;
    edges.push_back({s.from_parent[ed.u], s.from_parent[ed.v], ed.cap});
    s.edge_to_parent.push_back(e);
  }
  s.graph = Graph(a.size(), std::move(edges), g.W(), false);
  return s;
}

Partition connected_components(const Graph& g) {
  std::vector<int> label(g.n(), -1);
  int k = 0;
  std::vector<Vertex> stack;
  for (Vertex r = 0; r < g.n(); ++r) {
    if (label[r] >= 0) continue;
    label[r] = k;
    stack.push_back(r);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        Vertex w = g.other(e, v);
        if (label[w] < 0) {
          label[w] = k;
          stack.push_back(w);
        }
      }
    }
    ++k;
  }
  return Partition::from_labels(label);
}

namespace {
void fnv_mix(uint64_t& h, uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}
}  // namespace

uint64_t graph_checksum(const Graph& g) {
  uint64_t h = 0xcbf29ce484222325ULL;
  fnv_mix(h, static_cast<uint64_t>(g.n()));
  fnv_mix(h, std::bit_cast<uint64_t>(g.W()));
  for (const Edge& e : g.edges()) {
    fnv_mix(h, static_cast<uint64_t>(e.u));
    fnv_mix(h, static_cast<uint64_t>(e.v));
    fnv_mix(h, std::bit_cast<uint64_t>(e.cap));
  }
  return h;
}

}  // namespace conga
