#include "conga/faircut.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "conga/maxflow.h"

namespace conga {

VertexWeighting marked_degree(const Graph& g, const Partition& p_l, const VertexSet& a) {
  if (p_l.n() != g.n()) throw InputError("partition size does not match graph");
  std::vector<char> in_a = a.mask(g.n());
  VertexWeighting d(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    bool marked = p_l.cluster_of(e.u) != p_l.cluster_of(e.v) || in_a[e.u] != in_a[e.v];
    if (!marked) continue;
    if (in_a[e.u]) d[e.u] += e.cap;
    if (in_a[e.v]) d[e.v] += e.cap;
  }
  return d;
}

AuxiliaryInstance build_auxiliary(const Graph& g, const Partition& p_l, const VertexSet& a,
                                  double gamma, const VertexWeighting& s_w,
                                  const VertexWeighting& t_w) {
  if (a.empty()) throw InputError("auxiliary instance on an empty set");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
  if (static_cast<int>(s_w.size()) != g.n() || static_cast<int>(t_w.size()) != g.n())
    throw InputError("weighting size does not match graph");
  std::vector<char> in_a = a.mask(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (s_w[v] < 0.0 || t_w[v] < 0.0) throw InputError("negative weighting entry");
    if (!in_a[v] && (s_w[v] != 0.0 || t_w[v] != 0.0))
      throw InputError("weighting supported outside A at vertex " + std::to_string(v));
  }
  Subgraph sub = induced_subgraph(g, a);
  VertexWeighting md = marked_degree(g, p_l, a);

  AuxiliaryInstance inst;
  const int k = a.size();
  inst.back_map = sub.to_parent;
  inst.x_id = k;
  inst.s_id = k + 1;
  inst.t_id = k + 2;
  inst.gamma = gamma;
  inst.s_weights.assign(k, 0.0);
  inst.t_weights.assign(k, 0.0);
  inst.marked_degree.assign(k, 0.0);
  std::vector<Edge> edges = sub.graph.edges();
  inst.edge_origin = sub.edge_to_parent;
  auto add = [&](Vertex hub, Vertex v, double cap) {
    if (cap <= 0.0) return;
    edges.push_back({v, hub, cap});
    inst.edge_origin.push_back(-1);
  };
  for (int i = 0; i < k; ++i) {
    Vertex v = sub.to_parent[i];
    inst.s_weights[i] = s_w[v];
    inst.t_weights[i] = t_w[v];
    inst.marked_degree[i] = md[v];
    add(inst.x_id, i, gamma * md[v]);
  }
  for (int i = 0; i < k; ++i) add(inst.s_id, i, inst.s_weights[i]);
  for (int i = 0; i < k; ++i) add(inst.t_id, i, inst.t_weights[i]);
  inst.h = Graph(k + 3, std::move(edges), g.W(), false);
  return inst;
}

FairCutFlowPair ExactBackend::solve(const Graph& h, Vertex s, Vertex t, double,
                                    const LaminarApproximator*) const {
  MaxFlowResult mf = exact_max_flow(h, s, t);
  FairCutFlowPair pair;
  pair.cut = std::move(mf.cut);
  pair.flow = std::move(mf.flow);
  pair.flow_value = mf.value;
  pair.fairness = measured_fairness(h, pair.cut, pair.flow);
  if (pair.cut.contains(t))
    throw InternalError("exact backend returned a cut containing t");
  return pair;
}

const FairCutBackend& default_backend() {
  static const ExactBackend backend;
  return backend;
}

FairCutFlowPair fair_cut(const AuxiliaryInstance& inst, double eps,
                         const FairCutBackend& backend, const LaminarApproximator* approx) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("fair cut epsilon must lie in (0, 1]");
  FairCutFlowPair pair = backend.solve(inst.h, inst.s_id, inst.t_id, eps, approx);
  // Saturation is exact up to the residual threshold; absorb that slack.
  if (pair.fairness > 1.0 + eps && !validate_fair_pair(inst, pair, eps))
    throw InternalError("fair cut backend returned fairness " +
                        std::to_string(pair.fairness) + " above 1+eps");
  return pair;
}

double cut_value(const Graph& h, const VertexSet& cut) {
  std::vector<char> in = cut.mask(h.n());
  double total = 0.0;
  for (const Edge& e : h.edges())
    if (in[e.u] != in[e.v]) total += e.cap;
  return total;
}

namespace {
// Flow from the S side to the far side along edge e.
double outward_flow(const Edge& e, double f, const std::vector<char>& in) {
  return in[e.u] ? f : -f;
}
}  // namespace

double measured_fairness(const Graph& h, const VertexSet& cut, const EdgeFlow& f) {
  std::vector<char> in = cut.mask(h.n());
  double alpha = 1.0;
  for (EdgeId e = 0; e < h.m(); ++e) {
    const Edge& ed = h.edge(e);
    if (in[ed.u] == in[ed.v]) continue;
    double out = outward_flow(ed, f.value[e], in);
    if (out <= 0.0) return kInfinity;
    alpha = std::max(alpha, ed.cap / out);
  }
  return alpha;
}

bool validate_fair_pair(const Graph& h, Vertex s, Vertex t, const FairCutFlowPair& pair,
                        double eps) {
  const double tau = h.tau();
  if (pair.flow.m() != h.m()) return false;
  for (Vertex v : pair.cut)
    if (v < 0 || v >= h.n()) return false;
  if (!pair.cut.contains(s) || pair.cut.contains(t)) return false;
  for (EdgeId e = 0; e < h.m(); ++e)
    if (std::abs(pair.flow.value[e]) > h.edge(e).cap + tau) return false;
  Demand in = net_inflow(h, pair.flow);
  for (Vertex v = 0; v < h.n(); ++v)
    if (v != s && v != t && std::abs(in[v]) > tau) return false;
  std::vector<char> side = pair.cut.mask(h.n());
  for (EdgeId e = 0; e < h.m(); ++e) {
    const Edge& ed = h.edge(e);
    if (side[ed.u] == side[ed.v]) continue;
    if (outward_flow(ed, pair.flow.value[e], side) < ed.cap / (1.0 + eps) - tau) return false;
  }
  return true;
}

bool validate_fair_pair(const AuxiliaryInstance& inst, const FairCutFlowPair& pair,
                        double eps) {
  return validate_fair_pair(inst.h, inst.s_id, inst.t_id, pair, eps);
}

}  // namespace conga
