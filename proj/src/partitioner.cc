#include "conga/partitioner.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "conga/cut_matching.h"
#include "conga/faircut.h"
#include "conga/maxflow.h"
#include "conga/parallel.h"
#include "conga/trimming.h"

namespace conga {

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  auto mix = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

double Hierarchy::beta() const {
  double b = 1.0;
  for (const LevelCertificate& c : certificates) b = std::max(b, c.beta);
  return b;
}

std::vector<double> Hierarchy::boundary_sequence(const Graph& g) const {
  std::vector<double> seq;
  for (const Partition& p : levels) seq.push_back(partition_boundary_capacity(g, p));
  return seq;
}

bool check_star_assumption(const Graph& g, const Partition& p_l, const VertexSet& a,
                           double kappa) {
  std::vector<char> in_a = a.mask(g.n());
  VertexWeighting out_a(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    if (in_a[e.u] && !in_a[e.v]) out_a[e.u] += e.cap;
    if (in_a[e.v] && !in_a[e.u]) out_a[e.v] += e.cap;
  }
  VertexWeighting sink = restricted_degrees(g, partition_boundary_mask(g, p_l));
  const int src = g.n(), snk = g.n() + 1;
  FlowNetwork net(g.n() + 2);
  double need = 0.0;
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, kappa * e.cap);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (out_a[v] > 0.0) net.add_arc(src, v, out_a[v]);
    if (sink[v] > 0.0) net.add_arc(v, snk, sink[v]);
    need += out_a[v];
  }
  if (need <= 0.0) return true;
  double got = net.max_flow(src, snk, 1e-13 * (1.0 + g.total_capacity()));
  return got >= need - g.tau();
}

namespace {

struct InstanceOutcome {
  RecursionNode node;
  std::vector<VertexSet> children;
  VertexSet emitted;
  EmittedCluster evidence;
  EdgeFlow depth_flow;
  EdgeMask cut_edges;
};

InstanceOutcome solve_instance(const Graph& g, const Partition& p_l, const VertexSet& a,
                               int depth, int level, const LevelParams& params,
                               const BuildOptions& options) {
  InstanceOutcome out;
  out.node.A = a;
  out.node.depth = depth;
  out.depth_flow = EdgeFlow(g.m());
  out.cut_edges.assign(g.m(), 0);
  VertexWeighting d = marked_degree(g, p_l, a);
  double d_a = 0.0;
  for (Vertex v : a) d_a += d[v];
  out.node.weight = d_a;
  if (options.check_star)
    out.node.star_ok = check_star_assumption(g, p_l, a, params.kappa);

  if (d_a <= 0.0) {
    out.node.outcome = RecursionCase::kDegenerate;
    out.emitted = a;
    out.evidence.C = a;
    return out;
  }

  CMGParams cp = CMGParams::make(params.phi, params.kappa, params.T);
  CMGOptions co;
  co.dense = options.dense_cap > 0 && a.size() <= options.dense_cap;
  co.dense_cap = std::max(options.dense_cap, 1);
  CMGResult cmg = run_cmg(g, p_l, a, cp, derive_seed(options.seed, level, depth, a[0]), co);
  out.node.dense = co.dense;
  if (co.dense) {
    out.node.min_energy_slack = kInfinity;
    for (const RoundDiagnostics& r : cmg.rounds) {
      out.node.max_row_sum_error = std::max(out.node.max_row_sum_error, r.row_sum_error);
      out.node.min_energy_slack =
          std::min(out.node.min_energy_slack, r.psi_before - r.psi_after - r.energy_bound);
    }
    if (cmg.rounds.empty()) out.node.min_energy_slack = 0.0;
  }
  TrimParams tp = TrimParams::make(params.phi, params.kappa, 1.0 / (4.0 * params.T));
  TrimResult tr = trim(g, p_l, a, cmg.R, tp);
  out.node.R = cmg.R;
  out.node.B = tr.B;
  out.node.cmg_rounds = cmg.rounds_run;
  out.node.certificate_resolved = tr.certificate_resolved;
  for (Vertex v : cmg.R) out.node.removed_weight += d[v];

  VertexSet rb = set_union(cmg.R, tr.B);
  VertexSet rest = set_difference(a, rb);
  bool split = cmg.early_termination;
  out.node.outcome = split ? RecursionCase::kSplit : RecursionCase::kEmit;
  if (!rb.empty()) out.children.push_back(rb);
  if (split) {
    if (!rest.empty()) out.children.push_back(rest);
  } else if (!rest.empty()) {
    out.emitted = rest;
    out.evidence.C = rest;
    out.evidence.cmg_rounds = cmg.rounds_run;
    out.evidence.mixing_claimed = cmg.mixing_claimed;
    for (const auto& m : cmg.matchings)
      out.evidence.matching_pairs += static_cast<int>(m.pairs.size());
  }

  // Saturate ∂_{G[A]}(R ∪ B) towards the rest, then add twice the certificate.
  std::vector<char> in_a = a.mask(g.n());
  std::vector<char> in_rb = rb.mask(g.n());
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_a[ed.u] || !in_a[ed.v] || in_rb[ed.u] == in_rb[ed.v]) continue;
    out.cut_edges[e] = 1;
    out.depth_flow.value[e] = in_rb[ed.u] ? ed.cap : -ed.cap;
  }
  for (EdgeId e = 0; e < g.m(); ++e) out.depth_flow.value[e] += 2.0 * tr.g_flow.value[e];

  for (const VertexSet& child : out.children) {
    VertexWeighting dc = marked_degree(g, p_l, child);
    double w = 0.0;
    for (Vertex v : child) w += dc[v];
    out.node.child_weights.push_back(w);
    if (w > (1.0 - 1.0 / (24.0 * params.T)) * d_a + g.tau())
      throw InternalError("recursive child of a " + std::to_string(a.size()) +
                          "-vertex call at depth " + std::to_string(depth) +
                          " did not shrink its weight");
  }
  return out;
}

}  // namespace

NextLevelResult next_level(const Graph& g, const std::vector<Partition>& levels,
                           const LevelParams& params, const BuildOptions& options) {
  if (levels.empty()) throw InputError("next_level needs at least one level");
  const Partition& p_l = levels.back();
  const int level = static_cast<int>(levels.size());
  NextLevelResult res;
  LevelCertificate& cert = res.certificate;
  std::vector<int> label(g.n(), -1);
  int clusters = 0;

  std::vector<VertexSet> frontier = connected_components(g).clusters();
  int depth = 0;
  while (!frontier.empty()) {
    std::vector<InstanceOutcome> outcomes(frontier.size());
    std::vector<std::exception_ptr> errors(frontier.size());
    ScopedThreads threads(options.threads);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < frontier.size(); ++i) {
      try {
        outcomes[i] = solve_instance(g, p_l, frontier[i], depth, level, params, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (size_t i = 0; i < frontier.size(); ++i) {
      if (!errors[i]) continue;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const InternalError& e) {
        throw InternalError(std::string(e.what()) + " [level " + std::to_string(level) +
                            ", depth " + std::to_string(depth) + ", call " +
                            std::to_string(i) + "]");
      }
    }
    EdgeFlow flow(g.m());
    EdgeMask cut(g.m(), 0);
    std::vector<VertexSet> next;
    for (InstanceOutcome& o : outcomes) {
      flow += o.depth_flow;
      for (EdgeId e = 0; e < g.m(); ++e) cut[e] |= o.cut_edges[e];
      for (double w : o.node.child_weights)
        cert.max_shrink = std::max(cert.max_shrink, w / o.node.weight);
      if (!o.node.star_ok) ++cert.star_failures;
      if (!o.emitted.empty()) {
        for (Vertex v : o.emitted) label[v] = clusters;
        ++clusters;
        cert.clusters.push_back(std::move(o.evidence));
      }
      for (VertexSet& c : o.children) next.push_back(std::move(c));
      cert.nodes.push_back(std::move(o.node));
    }
    cert.depth_flows.push_back(std::move(flow));
    cert.depth_edges.push_back(std::move(cut));
    cert.max_depth = depth;
    frontier = std::move(next);
    ++depth;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (label[v] < 0) throw InternalError("vertex " + std::to_string(v) + " never emitted");
  res.partition = Partition::from_labels(label).canonical();
  if (auto f = try_assemble_level_flow(g, p_l, res.partition, cert.depth_flows)) {
    cert.level_flow = std::move(*f);
  } else {
    cert.level_flow = solve_level_flow(g, p_l, res.partition);
    cert.level_flow_resolved = true;
  }
  cert.beta = congestion(g, cert.level_flow);
  return res;
}

std::optional<EdgeFlow> try_assemble_level_flow(const Graph& g, const Partition& p_l,
                                                const Partition& p_next,
                                                const std::vector<EdgeFlow>& depth_flows) {
  const double tol = g.tau();
  EdgeFlow sum(g.m());
  for (const EdgeFlow& f : depth_flows) sum += f;
  VertexWeighting d1 = restricted_degrees(g, partition_boundary_mask(g, p_next));
  VertexWeighting d0 = restricted_degrees(g, partition_boundary_mask(g, p_l));
  Demand in = net_inflow(g, sum);
  for (Vertex v = 0; v < g.n(); ++v)
    if (d1[v] + in[v] > (d0[v] + d1[v]) / 3.0 + tol) return std::nullopt;
  sum *= 1.5;
  PathDecomposition pd = path_decompose(g, sum);
  VertexWeighting starts = pd.starts(g.n());
  VertexWeighting quota(g.n());
  for (Vertex v = 0; v < g.n(); ++v) quota[v] = std::min(starts[v], d1[v]);
  pd = trim_paths(pd, quota, tol);
  EdgeFlow out = accumulate(g, pd);
  if (!check_level_flow(g, p_l, p_next, out).ok)
    throw InternalError("assembled level flow violates its send/receive bounds");
  return out;
}

EdgeFlow assemble_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next,
                             const std::vector<EdgeFlow>& depth_flows) {
  std::optional<EdgeFlow> f = try_assemble_level_flow(g, p_l, p_next, depth_flows);
  if (!f) throw InternalError("level flow receives more than a third of its boundary degree");
  return *f;
}

namespace {

// Max-flow with edges scaled by beta; returns the flow if every v can send d1(v).
std::optional<EdgeFlow> level_flow_at(const Graph& g, const VertexWeighting& d0,
                                      const VertexWeighting& d1, double need, double beta) {
  const int src = g.n(), snk = g.n() + 1;
  FlowNetwork net(g.n() + 2);
  std::vector<int> arc(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    arc[e] = net.add_undirected(g.edge(e).u, g.edge(e).v, beta * g.edge(e).cap);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (d1[v] > 0.0) net.add_arc(src, v, d1[v]);
    if (d0[v] > 0.0) net.add_arc(v, snk, d0[v] / 2.0);
  }
  double got = net.max_flow(src, snk, 1e-13 * (1.0 + beta * g.total_capacity()));
  if (got < need - g.tau()) return std::nullopt;
  EdgeFlow f(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) f.value[e] = net.flow(arc[e]);
  return f;
}

}  // namespace

EdgeFlow solve_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next) {
  VertexWeighting d1 = restricted_degrees(g, partition_boundary_mask(g, p_next));
  VertexWeighting d0 = restricted_degrees(g, partition_boundary_mask(g, p_l));
  const double need = std::accumulate(d1.begin(), d1.end(), 0.0);
  if (need <= g.tau()) return EdgeFlow(g.m());
  double lo = 0.0, hi = 1.0;
  std::optional<EdgeFlow> best;
  for (int i = 0; i < 64 && !(best = level_flow_at(g, d0, d1, need, hi)); ++i) {
    lo = hi;
    hi *= 2.0;
  }
  if (!best) throw InternalError("no level flow exists at any congestion");
  for (int i = 0; i < 30 && hi - lo > 1e-3 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (auto f = level_flow_at(g, d0, d1, need, mid)) {
      hi = mid;
      best = std::move(f);
    } else {
      lo = mid;
    }
  }
  if (!check_level_flow(g, p_l, p_next, *best).ok)
    throw InternalError("directly solved level flow violates its send/receive bounds");
  return *best;
}

LevelFlowCheck check_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next,
                                const EdgeFlow& f) {
  LevelFlowCheck c;
  const double tol = g.tau();
  if (f.m() != g.m()) return c;
  VertexWeighting d1 = restricted_degrees(g, partition_boundary_mask(g, p_next));
  VertexWeighting d0 = restricted_degrees(g, partition_boundary_mask(g, p_l));
  Demand in = net_inflow(g, f);
  Demand b(g.n());
  c.ok = true;
  for (Vertex v = 0; v < g.n(); ++v) {
    double received = d1[v] + in[v];
    if (received < -tol || received > d0[v] / 2.0 + tol) c.ok = false;
    b[v] = std::clamp(received, 0.0, d0[v] / 2.0) - d1[v];
  }
  RouteCheck rc = route_check(g, f, b);
  c.ok = c.ok && rc.ok;
  c.congestion = rc.congestion;
  return c;
}

Hierarchy build_hierarchy(const Graph& g, const BuildOptions& options) {
  Hierarchy h;
  h.params = LevelParams::make(g.n(), g.W(), options.constants);
  h.constants = options.constants;
  h.seed = options.seed;
  h.levels.push_back(Partition::singletons(g.n()));
  h.connected = connected_components(g).size() <= 1;
  const double total = g.total_capacity();
  const int cap = (total >= 1.0 ? static_cast<int>(std::ceil(std::log2(total))) : 0) + 2;
  double delta = partition_boundary_capacity(g, h.levels.back());
  while (delta > 0.0) {
    if (h.L() >= cap)
      throw InternalError("level cap of " + std::to_string(cap) + " exceeded");
    NextLevelResult r = next_level(g, h.levels, h.params, options);
    double next_delta = partition_boundary_capacity(g, r.partition);
    if (next_delta > delta / 2.0 + g.tau())
      throw InternalError("boundary did not halve at level " + std::to_string(h.L() + 1));
    h.levels.push_back(std::move(r.partition));
    h.certificates.push_back(std::move(r.certificate));
    delta = next_delta;
  }
  return h;
}

}  // namespace conga
