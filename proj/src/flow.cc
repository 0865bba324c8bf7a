#include "conga/flow.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace conga {

EdgeFlow& EdgeFlow::operator+=(const EdgeFlow& o) {
  if (o.m() != m()) throw InputError("flow size mismatch");
  for (int e = 0; e < m(); ++e) value[e] += o.value[e];
  return *this;
}

EdgeFlow& EdgeFlow::operator*=(double s) {
  for (double& x : value) x *= s;
  return *this;
}

Demand net_inflow(const Graph& g, const EdgeFlow& f) {
  if (f.m() != g.m()) throw InputError("flow size mismatch");
  Demand b(g.n(), 0.0);
  for (EdgeId e = 0; e < g.m(); ++e) {
    b[g.edge(e).u] -= f.value[e];
    b[g.edge(e).v] += f.value[e];
  }
  return b;
}

double congestion(const Graph& g, const EdgeFlow& f) {
  double c = 0.0;
  for (EdgeId e = 0; e < g.m(); ++e) c = std::max(c, std::abs(f.value[e]) / g.edge(e).cap);
  return c;
}

RouteCheck route_check(const Graph& g, const EdgeFlow& f, const Demand& b) {
  RouteCheck r;
  if (f.m() != g.m() || static_cast<int>(b.size()) != g.n()) return r;
  Demand in = net_inflow(g, f);
  for (Vertex v = 0; v < g.n(); ++v)
    r.max_violation = std::max(r.max_violation, std::abs(in[v] - b[v]));
  r.congestion = congestion(g, f);
  r.ok = r.max_violation <= g.tau();
  return r;
}

VertexWeighting PathDecomposition::starts(int n) const {
  VertexWeighting s(n, 0.0);
  for (const Path& p : paths) s[p.start()] += p.capacity;
  return s;
}

VertexWeighting PathDecomposition::ends(int n) const {
  VertexWeighting s(n, 0.0);
  for (const Path& p : paths) s[p.end()] += p.capacity;
  return s;
}

namespace {

double zero_threshold(const Graph& g) { return 1e-14 * (1.0 + g.total_capacity()); }

Vertex head(const Graph& g, const EdgeFlow& f, EdgeId e) {
  return f.value[e] > 0 ? g.edge(e).v : g.edge(e).u;
}

// Outgoing positive-flow edges per vertex, by flow direction.
std::vector<std::vector<EdgeId>> out_edges(const Graph& g, const EdgeFlow& f, double z) {
  std::vector<std::vector<EdgeId>> out(g.n());
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (std::abs(f.value[e]) <= z) continue;
    out[f.value[e] > 0 ? g.edge(e).u : g.edge(e).v].push_back(e);
  }
  return out;
}

}  // namespace

void cancel_cycles(const Graph& g, EdgeFlow& f) {
  const double z = zero_threshold(g);
  for (double& x : f.value)
    if (std::abs(x) <= z) x = 0.0;
  auto out = out_edges(g, f, z);
  std::vector<size_t> ptr(g.n(), 0);
  std::vector<char> state(g.n(), 0);  // 0 fresh, 1 on stack, 2 exhausted
  std::vector<Vertex> stack;
  std::vector<EdgeId> via;  // via[i] enters stack[i + 1]
  for (Vertex root = 0; root < g.n(); ++root) {
    if (state[root] != 0) continue;
    stack.assign(1, root);
    via.clear();
    state[root] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      auto& list = out[v];
      while (ptr[v] < list.size() &&
             (f.value[list[ptr[v]]] == 0.0 || state[head(g, f, list[ptr[v]])] == 2))
        ++ptr[v];
      if (ptr[v] == list.size()) {
        state[v] = 2;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      EdgeId e = list[ptr[v]];
      Vertex w = head(g, f, e);
      if (state[w] == 0) {
        state[w] = 1;
        stack.push_back(w);
        via.push_back(e);
        continue;
      }
      // w is on the stack: cancel the cycle w -> ... -> v -> w.
      size_t pos = std::find(stack.begin(), stack.end(), w) - stack.begin();
      double amount = std::abs(f.value[e]);
      for (size_t i = pos; i < via.size(); ++i) amount = std::min(amount, std::abs(f.value[via[i]]));
      auto reduce = [&](EdgeId x) {
        double nv = std::abs(f.value[x]) - amount;
        if (nv <= z) nv = 0.0;
        f.value[x] = f.value[x] > 0 ? nv : -nv;
      };
      reduce(e);
      for (size_t i = pos; i < via.size(); ++i) reduce(via[i]);
      // Unwind to the first vertex whose entering edge died; others stay.
      size_t cut = stack.size();
      for (size_t i = pos; i < via.size(); ++i) {
        if (f.value[via[i]] == 0.0) {
          cut = i + 1;
          break;
        }
      }
      while (stack.size() > cut) {
        state[stack.back()] = 0;
        stack.pop_back();
        via.pop_back();
      }
    }
  }
}

PathDecomposition path_decompose(const Graph& g, const EdgeFlow& flow) {
  EdgeFlow f = flow;
  cancel_cycles(g, f);
  const double z = zero_threshold(g);
  Demand in = net_inflow(g, f);
  auto out = out_edges(g, f, z);
  std::vector<size_t> ptr(g.n(), 0);
  PathDecomposition pd;
  auto next_edge = [&](Vertex v) -> EdgeId {
    auto& list = out[v];
    while (ptr[v] < list.size() && f.value[list[ptr[v]]] == 0.0) ++ptr[v];
    return ptr[v] < list.size() ? list[ptr[v]] : -1;
  };
  for (Vertex src = 0; src < g.n(); ++src) {
    while (-in[src] > z) {
      Path p;
      p.vertices.push_back(src);
      Vertex cur = src;
      while (true) {
        if (cur != src && in[cur] > z) break;
        EdgeId e = next_edge(cur);
        if (e < 0) break;
        p.edges.push_back(e);
        cur = head(g, f, e);
        p.vertices.push_back(cur);
      }
      if (p.edges.empty()) {
        in[src] = 0.0;  // numerical residue with nowhere to go
        break;
      }
      double amount = -in[src];
      if (in[cur] > z) amount = std::min(amount, in[cur]);
      for (EdgeId e : p.edges) amount = std::min(amount, std::abs(f.value[e]));
      for (EdgeId e : p.edges) {
        double nv = std::abs(f.value[e]) - amount;
        if (nv <= z) nv = 0.0;
        f.value[e] = f.value[e] > 0 ? nv : -nv;
      }
      in[src] += amount;
      in[cur] -= amount;
      p.capacity = amount;
      pd.paths.push_back(std::move(p));
    }
  }
  return pd;
}

EdgeFlow accumulate(const Graph& g, const PathDecomposition& pd) {
  EdgeFlow f(g.m());
  for (const Path& p : pd.paths) {
    for (size_t i = 0; i < p.edges.size(); ++i) {
      EdgeId e = p.edges[i];
      f.value[e] += g.edge(e).u == p.vertices[i] ? p.capacity : -p.capacity;
    }
  }
  return f;
}

PathDecomposition trim_paths(const PathDecomposition& pd, const VertexWeighting& quota,
                             double tol) {
  int n = static_cast<int>(quota.size());
  VertexWeighting have = pd.starts(n);
  VertexWeighting excess(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    if (quota[v] < 0.0) throw InputError("negative quota at vertex " + std::to_string(v));
    if (have[v] < quota[v] - tol)
      throw InternalError("trim_paths: vertex " + std::to_string(v) + " starts " +
                          std::to_string(have[v]) + " < quota " + std::to_string(quota[v]));
    excess[v] = std::max(0.0, have[v] - quota[v]);
  }
  PathDecomposition out;
  out.paths.reserve(pd.paths.size());
  // Remove from the latest paths first.
  std::vector<double> cap(pd.paths.size());
  for (size_t i = pd.paths.size(); i-- > 0;) {
    const Path& p = pd.paths[i];
    double take = std::min(p.capacity, excess[p.start()]);
    excess[p.start()] -= take;
    cap[i] = p.capacity - take;
  }
  for (size_t i = 0; i < pd.paths.size(); ++i) {
    if (cap[i] <= 0.0) continue;
    Path p = pd.paths[i];
    p.capacity = cap[i];
    out.paths.push_back(std::move(p));
  }
  return out;
}

}  // namespace conga
