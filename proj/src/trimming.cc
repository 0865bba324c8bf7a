#include "conga/trimming.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conga/faircut.h"
#include "conga/maxflow.h"

namespace conga {

VertexWeighting inner_boundary_degree(const Graph& g, const VertexSet& a, const VertexSet& x) {
  std::vector<char> in_a = a.mask(g.n());
  std::vector<char> in_x = x.mask(g.n());
  VertexWeighting deg(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    if (!in_a[e.u] || !in_a[e.v] || in_x[e.u] == in_x[e.v]) continue;
    deg[in_x[e.u] ? e.v : e.u] += e.cap;
  }
  return deg;
}

namespace {

// Solves property 4 directly: sources deg_∂, sinks up to 24 phi d, edges at
// twice their capacity. Returns false when not every source is served.
bool resolve_certificate(const Graph& g, const std::vector<char>& in_u,
                         const VertexWeighting& quota, const VertexWeighting& d, double phi,
                         TrimResult& out) {
  const int src = g.n(), snk = g.n() + 1;
  FlowNetwork net(g.n() + 2);
  std::vector<int> arc(g.m(), -1), sink_arc(g.n(), -1);
  double need = 0.0;
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (in_u[ed.u] && in_u[ed.v]) arc[e] = net.add_undirected(ed.u, ed.v, 2.0 * ed.cap);
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!in_u[v]) continue;
    if (quota[v] > 0.0) net.add_arc(src, v, quota[v]);
    need += quota[v];
    if (d[v] > 0.0) sink_arc[v] = net.add_arc(v, snk, 24.0 * phi * d[v]);
  }
  double got = net.max_flow(src, snk, 1e-13 * (1.0 + g.total_capacity()));
  out.g_flow = EdgeFlow(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    if (arc[e] >= 0) out.g_flow.value[e] = net.flow(arc[e]);
  out.t_vec.assign(g.n(), 0.0);
  for (Vertex v = 0; v < g.n(); ++v)
    if (sink_arc[v] >= 0) out.t_vec[v] = net.flow(sink_arc[v]);
  out.certificate_resolved = true;
  return got >= need - g.tau();
}

}  // namespace

TrimResult trim(const Graph& g, const Partition& p_l, const VertexSet& a, const VertexSet& r,
                const TrimParams& params) {
  if (a.empty()) throw InputError("trimming on an empty set");
  for (Vertex v : r)
    if (!a.contains(v)) throw InputError("R is not a subset of A");
  const int k = a.size();
  const double phi = params.phi;
  const double tol = g.tau();
  VertexWeighting d = marked_degree(g, p_l, a);
  std::vector<char> in_r = r.mask(g.n());
  // R hangs off s with more capacity than any finite cut, so R stays on the
  // source side and no fair flow can leave A \ (R ∪ B) through R.
  const double pin = 4.0 * (g.total_capacity() + 1.0);
  VertexWeighting s_w(g.n(), 0.0), t_w(g.n(), 0.0);
  for (Vertex v : a) {
    if (in_r[v]) {
      s_w[v] = pin;
    } else {
      s_w[v] = params.eps * phi * d[v];
      t_w[v] = 12.0 * phi * d[v];
    }
  }
  AuxiliaryInstance inst = build_auxiliary(g, p_l, a, params.gamma, s_w, t_w);
  FairCutFlowPair pair = fair_cut(inst, params.eps);
  cancel_cycles(inst.h, pair.flow);
  const Graph& h = inst.h;

  std::vector<char> side = pair.cut.mask(h.n());
  TrimResult out;
  std::vector<Vertex> b;
  for (Vertex v : pair.cut)
    if (v < k) b.push_back(inst.back_map[v]);
  out.B = VertexSet(std::move(b));

  // Every vertex outside S must receive the full capacity it has towards S.
  {
    VertexWeighting from_s(h.n(), 0.0), cap_s(h.n(), 0.0);
    for (EdgeId e = 0; e < h.m(); ++e) {
      const Edge& ed = h.edge(e);
      if (side[ed.u] == side[ed.v]) continue;
      Vertex outside = side[ed.u] ? ed.v : ed.u;
      cap_s[outside] += ed.cap;
      from_s[outside] += side[ed.u] ? pair.flow.value[e] : -pair.flow.value[e];
    }
    for (Vertex v = 0; v < h.n(); ++v)
      if (!side[v] && from_s[v] < cap_s[v] / (1.0 + params.eps) - tol)
        throw InternalError("trimming fair flow under-serves vertex " + std::to_string(v));
  }

  VertexSet rb = set_union(r, out.B);
  std::vector<char> in_rb = rb.mask(g.n());
  std::vector<char> in_u(g.n(), 0);
  std::vector<char> local_u(h.n(), 0);
  for (int i = 0; i < k; ++i) {
    Vertex v = inst.back_map[i];
    if (!in_rb[v]) in_u[v] = local_u[i] = 1;
  }
  VertexWeighting quota_full = inner_boundary_degree(g, a, rb);

  // Restrict to G[U] plus the t edges, scale by 2, trim each source to its
  // boundary degree.
  EdgeFlow kept(h.m());
  for (EdgeId e = 0; e < h.m(); ++e) {
    const Edge& ed = h.edge(e);
    bool inner = inst.edge_origin[e] >= 0 && local_u[ed.u] && local_u[ed.v];
    bool to_t = (ed.v == inst.t_id && local_u[ed.u]);
    if (inner || to_t) kept.value[e] = 2.0 * pair.flow.value[e];
  }
  PathDecomposition pd = path_decompose(h, kept);
  VertexWeighting quota(h.n(), 0.0);
  for (int i = 0; i < k; ++i)
    if (local_u[i]) quota[i] = quota_full[inst.back_map[i]];

  bool ok = true;
  VertexWeighting have = pd.starts(h.n());
  for (int i = 0; i < k && ok; ++i)
    if (local_u[i] && have[i] < quota[i] - tol) ok = false;
  if (ok) {
    pd = trim_paths(pd, quota, tol);
    EdgeFlow local = accumulate(h, pd);
    out.g_flow = EdgeFlow(g.m());
    out.t_vec.assign(g.n(), 0.0);
    for (EdgeId e = 0; e < h.m(); ++e) {
      const Edge& ed = h.edge(e);
      if (inst.edge_origin[e] >= 0) {
        out.g_flow.value[inst.edge_origin[e]] = local.value[e];
      } else if (ed.v == inst.t_id) {
        out.t_vec[inst.back_map[ed.u]] += local.value[e];
      }
    }
    Demand demand(g.n(), 0.0);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!in_u[v]) continue;
      if (out.t_vec[v] > 24.0 * phi * d[v] + tol) ok = false;
      demand[v] = out.t_vec[v] - quota_full[v];
    }
    if (ok) ok = route_check(g, out.g_flow, demand).ok;
  }
  if (!ok && !resolve_certificate(g, in_u, quota_full, d, phi, out))
    throw InternalError("trimming certificate infeasible on a set of " +
                        std::to_string(k) + " vertices");
  return out;
}

TrimCheck check_trim(const Graph& g, const Partition& p_l, const VertexSet& a,
                     const VertexSet& r, const TrimResult& res, double phi, double eps) {
  TrimCheck c;
  const double tol = g.tau();
  VertexWeighting d = marked_degree(g, p_l, a);
  const double d_a = std::accumulate(d.begin(), d.end(), 0.0);
  std::vector<char> in_a = a.mask(g.n());
  auto inner_boundary = [&](const VertexSet& x) {
    std::vector<char> in_x = x.mask(g.n());
    double total = 0.0;
    for (const Edge& e : g.edges())
      if (in_a[e.u] && in_a[e.v] && in_x[e.u] != in_x[e.v]) total += e.cap;
    return total;
  };
  for (Vertex v : res.B)
    if (!in_a[v]) return c;
  const double delta_r = inner_boundary(r);
  c.property1 = inner_boundary(res.B) <= 2.0 * delta_r + 2.0 * eps * phi * d_a + tol;
  double d_b_minus_r = 0.0;
  for (Vertex v : set_difference(res.B, r)) d_b_minus_r += d[v];
  c.property2 = d_b_minus_r <= delta_r / (6.0 * phi) + eps / 6.0 * d_a + tol;

  VertexSet rb = set_union(r, res.B);
  std::vector<char> in_rb = rb.mask(g.n());
  VertexWeighting deg_b = inner_boundary_degree(g, a, rb);
  if (res.g_flow.m() != g.m() || static_cast<int>(res.t_vec.size()) != g.n()) return c;
  Demand demand(g.n(), 0.0);
  bool ok = true;
  for (Vertex v = 0; v < g.n(); ++v) {
    bool in_u = in_a[v] && !in_rb[v];
    double t = res.t_vec[v];
    if (!in_u) {
      if (std::abs(t) > tol) ok = false;
      continue;
    }
    if (t < -tol || t > 24.0 * phi * d[v] + tol) ok = false;
    demand[v] = t - deg_b[v];
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    bool inner = in_a[ed.u] && in_a[ed.v] && !in_rb[ed.u] && !in_rb[ed.v];
    if (!inner && std::abs(res.g_flow.value[e]) > tol) ok = false;
  }
  RouteCheck rc = route_check(g, res.g_flow, demand);
  c.property4 = ok && rc.ok && rc.congestion <= 2.0 + tol;
  return c;
}

}  // namespace conga
