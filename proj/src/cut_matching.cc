#include "conga/cut_matching.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "conga/faircut.h"

namespace conga {

VertexWeighting MatchingGraph::degrees(int n) const {
  VertexWeighting deg(n, 0.0);
  for (const Pair& p : pairs) {
    deg[p.u] += p.cap;
    deg[p.v] += p.cap;
  }
  return deg;
}

std::vector<double> random_unit_orthogonal(int n, Rng& rng) {
  if (n < 2) throw InputError("random unit vector orthogonal to ones needs n >= 2");
  std::normal_distribution<double> normal;
  std::vector<double> r(n);
  double norm = 0.0;
  while (norm < 1e-6) {
    for (double& x : r) x = normal(rng);
    double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
    norm = 0.0;
    for (double& x : r) {
      x -= mean;
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  for (double& x : r) x /= norm;
  return r;
}

std::vector<double> project_flow_vectors(const std::vector<MatchingGraph>& matchings,
                                         const VertexWeighting& d,
                                         const std::vector<double>& r) {
  const size_t k = d.size();
  if (r.size() != k) throw InputError("projection vector size mismatch");
  std::vector<double> q(k);
  for (size_t u = 0; u < k; ++u) q[u] = d[u] * r[u];
  std::vector<double> next;
  for (const MatchingGraph& m : matchings) {
    next = q;
    for (const auto& p : m.pairs) {
      if (d[p.u] <= 0.0 || d[p.v] <= 0.0)
        throw InternalError("matching touches a zero-weight vertex");
      double diff = q[p.v] / d[p.v] - q[p.u] / d[p.u];
      next[p.u] += p.cap / 2.0 * diff;
      next[p.v] -= p.cap / 2.0 * diff;
    }
    q.swap(next);
  }
  std::vector<double> out(k, 0.0);
  for (size_t u = 0; u < k; ++u)
    if (d[u] > 0.0) out[u] = q[u] / d[u];
  return out;
}

SplitResult split_by_projection(const std::vector<double>& p, const VertexWeighting& d,
                                const std::vector<char>& active) {
  SplitResult s;
  std::vector<int> order;
  for (size_t v = 0; v < p.size(); ++v)
    if (active[v] && d[v] > 0.0) order.push_back(static_cast<int>(v));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p[a] < p[b]; });
  double total = 0.0;
  for (int v : order) total += d[v];
  std::vector<char> is_left(p.size(), 0);
  if (!order.empty()) {
    size_t i = 0;
    double prefix = 0.0;
    for (; i < order.size(); ++i) {
      prefix += d[order[i]];
      if (prefix >= total / 2.0) break;
    }
    i = std::min(i, order.size() - 1);
    s.eta = p[order[i]];
    auto dev = [&](size_t lo, size_t hi) {
      double acc = 0.0;
      for (size_t j = lo; j < hi; ++j) {
        double x = p[order[j]] - s.eta;
        acc += d[order[j]] * x * x;
      }
      return acc;
    };
    double all = dev(0, order.size());
    bool first = dev(0, i + 1) >= all / 2.0;
    size_t lo = first ? 0 : i + 1;
    size_t hi = first ? i : order.size();
    for (size_t j = lo; j < hi; ++j) is_left[order[j]] = 1;
  }
  for (size_t v = 0; v < p.size(); ++v) {
    if (!active[v]) continue;
    (is_left[v] ? s.left : s.right).push_back(static_cast<int>(v));
  }
  return s;
}

RoundFlow cmg_round_flow(const Graph& g, const Partition& p_l, const VertexSet& a,
                         const std::vector<int>& left, const std::vector<int>& right,
                         const CMGParams& params) {
  const int k = a.size();
  VertexWeighting d = marked_degree(g, p_l, a);
  VertexWeighting s_w(g.n(), 0.0), t_w(g.n(), 0.0);
  for (Vertex v : a) s_w[v] = params.eps * params.phi * d[v];
  for (int i : left) s_w[a[i]] += params.phi * d[a[i]];
  for (int i : right) t_w[a[i]] = 12.0 * params.phi * d[a[i]];
  AuxiliaryInstance inst = build_auxiliary(g, p_l, a, params.gamma, s_w, t_w);
  FairCutFlowPair pair = fair_cut(inst, params.eps);
  cancel_cycles(inst.h, pair.flow);

  RoundFlow out;
  std::vector<char> in_cut(inst.h.n(), 0);
  for (Vertex v : pair.cut) {
    if (v < k) {
      out.cut.push_back(v);
      in_cut[v] = 1;
    }
  }
  // Keep G[A \ S_t], rescaled to unit-sized sources.
  const double scale = 1.0 / (12.0 * params.phi);
  EdgeFlow kept(inst.h.m());
  for (EdgeId e = 0; e < inst.h.m(); ++e) {
    const Edge& ed = inst.h.edge(e);
    if (inst.edge_origin[e] < 0 || in_cut[ed.u] || in_cut[ed.v]) continue;
    kept.value[e] = pair.flow.value[e] * scale;
  }
  PathDecomposition pd = path_decompose(inst.h, kept);
  VertexWeighting quota(inst.h.n(), 0.0);
  std::vector<char> is_right(k, 0);
  for (int i : right) is_right[i] = 1;
  for (int i : left)
    if (!in_cut[i]) quota[i] = inst.marked_degree[i] / 12.0;
  pd = trim_paths(pd, quota, g.tau());

  std::map<std::pair<int, int>, double> pairs;
  for (const Path& p : pd.paths) {
    if (p.end() >= k || !is_right[p.end()] || in_cut[p.end()])
      throw InternalError("round flow path ends outside the right side");
    pairs[{p.start(), p.end()}] += p.capacity;
  }
  for (const auto& [uv, c] : pairs) out.matching.pairs.push_back({uv.first, uv.second, c});
  EdgeFlow local = accumulate(inst.h, pd);
  out.flow = EdgeFlow(g.m());
  for (EdgeId e = 0; e < inst.h.m(); ++e)
    if (inst.edge_origin[e] >= 0) out.flow.value[inst.edge_origin[e]] = local.value[e];
  return out;
}

FlowMatrix initial_flow_matrix(const VertexWeighting& d) {
  FlowMatrix f(d.size(), std::vector<double>(d.size(), 0.0));
  for (size_t u = 0; u < d.size(); ++u) f[u][u] = d[u];
  return f;
}

FlowMatrix update_flow_matrix(const FlowMatrix& f, const MatchingGraph& m,
                              const VertexWeighting& d, int dense_cap) {
  if (static_cast<int>(f.size()) > dense_cap)
    throw InputError("dense flow matrix exceeds the configured cap");
  FlowMatrix next = f;
  const size_t k = f.size();
  for (const auto& p : m.pairs) {
    if (d[p.u] <= 0.0 || d[p.v] <= 0.0)
      throw InternalError("matching touches a zero-weight vertex");
    for (size_t j = 0; j < k; ++j) {
      double diff = f[p.v][j] / d[p.v] - f[p.u][j] / d[p.u];
      next[p.u][j] += p.cap / 2.0 * diff;
      next[p.v][j] -= p.cap / 2.0 * diff;
    }
  }
  return next;
}

double potential(const FlowMatrix& f, const VertexWeighting& d,
                 const std::vector<char>& active) {
  const size_t k = f.size();
  std::vector<double> mu(k, 0.0);
  double weight = 0.0;
  for (size_t u = 0; u < k; ++u) {
    if (!active[u] || d[u] <= 0.0) continue;
    weight += d[u];
    for (size_t j = 0; j < k; ++j) mu[j] += f[u][j];
  }
  if (weight <= 0.0) return 0.0;
  for (double& x : mu) x /= weight;
  double psi = 0.0;
  for (size_t u = 0; u < k; ++u) {
    if (!active[u] || d[u] <= 0.0) continue;
    double row = 0.0;
    for (size_t j = 0; j < k; ++j) {
      double x = f[u][j] / d[u] - mu[j];
      row += x * x;
    }
    psi += d[u] * row;
  }
  return psi;
}

double matching_energy(const FlowMatrix& f, const MatchingGraph& m, const VertexWeighting& d) {
  double total = 0.0;
  for (const auto& p : m.pairs) {
    double sq = 0.0;
    for (size_t j = 0; j < f.size(); ++j) {
      double x = f[p.u][j] / d[p.u] - f[p.v][j] / d[p.v];
      sq += x * x;
    }
    total += p.cap * sq;
  }
  return total / 2.0;
}

namespace {

double boundary_inside(const Graph& g, const std::vector<char>& in_a,
                       const std::vector<char>& in_s) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    if (in_a[e.u] && in_a[e.v] && in_s[e.u] != in_s[e.v]) total += e.cap;
  return total;
}

}  // namespace

CMGResult run_cmg(const Graph& g, const Partition& p_l, const VertexSet& a,
                  const CMGParams& params, uint64_t seed, const CMGOptions& options) {
  if (a.empty()) throw InputError("cut-matching game on an empty set");
  const int k = a.size();
  VertexWeighting d_full = marked_degree(g, p_l, a);
  VertexWeighting d(k);
  for (int i = 0; i < k; ++i) d[i] = d_full[a[i]];
  const double d_a = std::accumulate(d.begin(), d.end(), 0.0);
  CMGResult res;
  if (k == 1 || d_a <= 0.0) return res;
  if (options.dense && k > options.dense_cap)
    throw InputError("dense mode requested above the dense cap");

  const double tol = g.tau();
  const double phi = params.phi;
  std::vector<char> in_a = a.mask(g.n());
  std::vector<char> active(k, 1), in_r(k, 0), in_r_full(g.n(), 0);
  double d_r = 0.0;
  FlowMatrix fm;
  if (options.dense) fm = initial_flow_matrix(d);
  Rng rng(seed);

  for (int t = 1; t <= params.T; ++t) {
    std::vector<double> r = random_unit_orthogonal(k, rng);
    std::vector<double> p = project_flow_vectors(res.matchings, d, r);
    SplitResult split = split_by_projection(p, d, active);
    RoundFlow rf = cmg_round_flow(g, p_l, a, split.left, split.right, params);

    RoundDiagnostics diag;
    diag.left_size = static_cast<int>(split.left.size());
    diag.flow_congestion = congestion(g, rf.flow);
    std::vector<char> in_s(g.n(), 0);
    double d_s_active = 0.0;
    for (int i : rf.cut) {
      in_s[a[i]] = 1;
      diag.cut_weight += d[i];
      if (active[i]) d_s_active += d[i];
    }
    diag.cut_boundary = boundary_inside(g, in_a, in_s);
    // Only right-side vertices have t edges, so the weight bound covers S_t ∩ A^r.
    double d_s_right = 0.0, d_left = 0.0;
    std::vector<char> is_right(k, 0);
    for (int i : split.right) is_right[i] = 1;
    for (int i : split.left) d_left += d[i];
    for (int i : rf.cut)
      if (is_right[i]) d_s_right += d[i];
    if (diag.cut_boundary > phi * d_s_active + 3.0 * params.eps * phi * d_a + tol ||
        d_s_right > d_a / 3.0 + tol)
      throw InternalError("round " + std::to_string(t) + " cut violates its sparsity bound");
    if (diag.flow_congestion > 1.0 / (12.0 * phi) + tol)
      throw InternalError("round flow congestion above 1/(12 phi)");

    if (options.dense) diag.psi_before = potential(fm, d, active);
    const double d_r_before = d_r;
    for (int i : rf.cut) {
      active[i] = 0;
      if (!in_r[i]) d_r += d[i];
      in_r[i] = 1;
      in_r_full[a[i]] = 1;
    }
    if (options.dense) {
      diag.energy_bound = matching_energy(fm, rf.matching, d);
      fm = update_flow_matrix(fm, rf.matching, d, options.dense_cap);
      diag.psi_after = potential(fm, d, active);
      for (int u = 0; u < k; ++u) {
        double row = std::accumulate(fm[u].begin(), fm[u].end(), 0.0);
        diag.row_sum_error = std::max(diag.row_sum_error, std::abs(row - d[u]));
      }
    }
    res.rounds.push_back(diag);
    res.matchings.push_back(std::move(rf.matching));
    res.rounds_run = t;

    double delta_r = boundary_inside(g, in_a, in_r_full);
    if (delta_r > phi * d_r + phi / (6.0 * params.T) * d_a + tol ||
        d_left > (d_a - d_r_before) / 2.0 + tol)
      throw InternalError("accumulated cut violates its sparsity bound after round " +
                          std::to_string(t));
    if (d_r >= d_a / (6.0 * params.T)) {
      res.early_termination = true;
      break;
    }
  }
  res.mixing_claimed = !res.early_termination;
  std::vector<Vertex> members;
  for (int i = 0; i < k; ++i)
    if (in_r[i]) members.push_back(a[i]);
  res.R = VertexSet(std::move(members));
  return res;
}

}  // namespace conga
