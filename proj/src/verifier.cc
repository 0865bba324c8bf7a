#include "conga/verifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "conga/faircut.h"
#include "conga/maxflow.h"

namespace conga {

namespace {

double demand_tolerance(const Demand& b) {
  double total = 0.0;
  for (double x : b) total += std::abs(x);
  return 1e-9 * (1.0 + total);
}

bool balanced_on_components(const Graph& g, const Demand& b) {
  Partition comps = connected_components(g);
  const double tol = demand_tolerance(b);
  for (const VertexSet& c : comps.clusters()) {
    double net = 0.0;
    for (Vertex v : c) net += b[v];
    if (std::abs(net) > tol) return false;
  }
  return true;
}

void check_demand(const Graph& g, const Demand& b) {
  if (static_cast<int>(b.size()) != g.n()) throw InputError("demand has the wrong length");
}

double cut_ratio(const Graph& g, const Demand& b, uint32_t mask, double tol) {
  double net = 0.0;
  for (int v = 0; v < g.n(); ++v)
    if (mask >> v & 1u) net += b[v];
  double delta = 0.0;
  for (const Edge& e : g.edges())
    if ((mask >> e.u & 1u) != (mask >> e.v & 1u)) delta += e.cap;
  net = std::abs(net);
  if (delta > 0.0) return net / delta;
  return net > tol ? kInfinity : 0.0;
}

void check_bruteforce_size(const Graph& g) {
  if (g.n() > 16) throw InputError("brute-force oracle is limited to n <= 16");
}

// Network with edges scaled by lambda, sources at negative demand and sinks
// at positive demand. Returns max-flow value and fills the sink side.
double route_flow(const Graph& g, const Demand& b, double lambda, std::vector<char>* sink_side) {
  const int src = g.n(), snk = g.n() + 1;
  FlowNetwork net(g.n() + 2);
  double scale = 0.0;
  for (double x : b) scale += std::abs(x);
  // An acyclic flow never puts more than the total demand on one edge, so
  // clamping keeps huge lambda from swamping the tolerance.
  double edge_total = 0.0;
  for (const Edge& e : g.edges()) {
    double c = std::min(lambda * e.cap, scale);
    net.add_undirected(e.u, e.v, c);
    edge_total += c;
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (b[v] < 0.0) net.add_arc(src, v, -b[v]);
    if (b[v] > 0.0) net.add_arc(v, snk, b[v]);
  }
  const double eps = 1e-13 * (1.0 + scale + edge_total);
  double value = net.max_flow(src, snk, eps);
  if (sink_side) {
    std::vector<char> side = net.source_side(src, eps);
    sink_side->assign(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v) (*sink_side)[v] = !side[v];
  }
  return value;
}

double positive_part(const Demand& b) {
  double d = 0.0;
  for (double x : b) d += std::max(0.0, x);
  return d;
}

}  // namespace

double opt_congestion_bruteforce_serial(const Graph& g, const Demand& b) {
  check_bruteforce_size(g);
  check_demand(g, b);
  if (!balanced_on_components(g, b)) return kInfinity;
  if (g.n() <= 1) return 0.0;
  const double tol = demand_tolerance(b);
  const uint32_t limit = 1u << (g.n() - 1);
  double best = 0.0;
  for (uint32_t mask = 1; mask < limit; ++mask) best = std::max(best, cut_ratio(g, b, mask, tol));
  return best;
}

double opt_congestion_bruteforce(const Graph& g, const Demand& b) {
  check_bruteforce_size(g);
  check_demand(g, b);
  if (!balanced_on_components(g, b)) return kInfinity;
  if (g.n() <= 1) return 0.0;
  const double tol = demand_tolerance(b);
  const int64_t limit = int64_t{1} << (g.n() - 1);
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (int64_t mask = 1; mask < limit; ++mask)
    best = std::max(best, cut_ratio(g, b, static_cast<uint32_t>(mask), tol));
  return best;
}

bool routable(const Graph& g, const Demand& b, double lambda) {
  check_demand(g, b);
  const double d = positive_part(b);
  if (d <= demand_tolerance(b)) return balanced_on_components(g, b);
  if (!std::isfinite(lambda)) return balanced_on_components(g, b);
  return route_flow(g, b, lambda, nullptr) >= d - 1e-9 * (1.0 + d);
}

double opt_congestion_maxflow(const Graph& g, const Demand& b, double tol) {
  check_demand(g, b);
  if (!balanced_on_components(g, b)) return kInfinity;
  const double d = positive_part(b);
  if (d <= demand_tolerance(b)) return 0.0;
  auto feasible = [&](double lambda, std::vector<char>* sink_side) {
    return route_flow(g, b, lambda, sink_side) >= d - 1e-9 * (1.0 + d);
  };
  // Every singleton is a cut, so this is a lower bound.
  double lambda = 0.0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) > 0.0) lambda = std::max(lambda, std::abs(b[v]) / g.degree(v));

  std::vector<char> sink_side;
  for (int it = 0; it < 60; ++it) {
    if (feasible(lambda, &sink_side)) return lambda;
    double net = 0.0, delta = 0.0;
    for (Vertex v = 0; v < g.n(); ++v)
      if (sink_side[v]) net += b[v];
    for (const Edge& e : g.edges())
      if (sink_side[e.u] != sink_side[e.v]) delta += e.cap;
    if (delta <= 0.0) return kInfinity;
    double next = net / delta;
    if (!(next > lambda * (1.0 + 1e-12))) break;
    lambda = next;
  }

  // Bisection between an infeasible lambda and a feasible upper bound.
  double lo = lambda, hi = std::max(lambda, 1e-300) * 2.0;
  while (!feasible(hi, nullptr)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return kInfinity;
  }
  for (int it = 0; it < 60 && hi - lo > tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid, nullptr) ? hi : lo) = mid;
  }
  return hi;
}

namespace {

std::vector<Vertex> bfs_order(const Graph& g, Vertex root) {
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> order{root};
  seen[root] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    for (EdgeId e : g.incident(order[i])) {
      Vertex w = g.other(e, order[i]);
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

// Puts +amount on side (proportional to degree) and -amount on rest.
void spread(const Graph& g, const std::vector<Vertex>& side, const std::vector<Vertex>& rest,
            double amount, Demand& b) {
  double ds = 0.0, dr = 0.0;
  for (Vertex v : side) ds += g.degree(v);
  for (Vertex v : rest) dr += g.degree(v);
  if (ds <= 0.0 || dr <= 0.0) return;
  for (Vertex v : side) b[v] += amount * g.degree(v) / ds;
  for (Vertex v : rest) b[v] -= amount * g.degree(v) / dr;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(Rng& rng, int size) { return static_cast<int>(rng() % static_cast<uint64_t>(size)); }

}  // namespace

Demand sample_demand(const Graph& g, const LaminarApproximator& approx, DemandKind kind,
                     Rng& rng) {
  const int n = g.n();
  Demand b(n, 0.0);
  if (n < 2 || g.m() == 0) return b;
  Partition comps = connected_components(g);
  std::vector<int> big;
  for (int c = 0; c < comps.size(); ++c)
    if (comps.cluster(c).size() >= 2) big.push_back(c);
  if (big.empty()) return b;
  auto component_of = [&](Vertex v) { return comps.cluster(comps.cluster_of(v)).members(); };

  switch (kind) {
    case DemandKind::kPairs: {
      int pairs = 1 + pick(rng, std::max(1, n / 4));
      for (int i = 0; i < pairs; ++i) {
        const VertexSet& c = comps.cluster(big[pick(rng, static_cast<int>(big.size()))]);
        Vertex u = c[pick(rng, c.size())], v = c[pick(rng, c.size())];
        if (u == v) continue;
        double amt = uniform(rng, 0.1, 1.0) * std::min(g.degree(u), g.degree(v));
        b[u] -= amt;
        b[v] += amt;
      }
      break;
    }
    case DemandKind::kCluster: {
      std::vector<int> open;
      for (int x = 0; x < static_cast<int>(approx.nodes.size()); ++x)
        if (approx.nodes[x].delta > 0.0) open.push_back(x);
      if (open.empty()) return sample_demand(g, approx, DemandKind::kPairs, rng);
      int x = open[pick(rng, static_cast<int>(open.size()))];
      VertexSet c = approx.members(x);
      std::vector<char> in_c = c.mask(n);
      std::vector<Vertex> rest;
      for (Vertex v : component_of(c[0]))
        if (!in_c[v]) rest.push_back(v);
      double amount = approx.nodes[x].delta * uniform(rng, 0.5, 1.0) * (rng() % 2 ? 1.0 : -1.0);
      spread(g, c.members(), rest, amount, b);
      break;
    }
    case DemandKind::kSweep: {
      const VertexSet& c = comps.cluster(big[pick(rng, static_cast<int>(big.size()))]);
      std::vector<Vertex> order = bfs_order(g, c[pick(rng, c.size())]);
      if (rng() % 2) {
        Vertex s = order.front(), t = order.back();
        double amt = std::min(g.degree(s), g.degree(t));
        b[s] -= amt;
        b[t] += amt;
      } else {
        int k = 1 + pick(rng, static_cast<int>(order.size()) - 1);
        std::vector<Vertex> side(order.begin(), order.begin() + k);
        std::vector<Vertex> rest(order.begin() + k, order.end());
        std::vector<char> in_s(n, 0);
        for (Vertex v : side) in_s[v] = 1;
        double delta = boundary_capacity(g, in_s);
        spread(g, side, rest, delta * uniform(rng, 0.5, 1.0), b);
      }
      break;
    }
    case DemandKind::kDegree: {
      for (Vertex v = 0; v < n; ++v) b[v] = uniform(rng, -1.0, 1.0) * g.degree(v);
      for (const VertexSet& c : comps.clusters()) {
        double net = 0.0, deg = 0.0;
        for (Vertex v : c) {
          net += b[v];
          deg += g.degree(v);
        }
        for (Vertex v : c) b[v] = deg > 0.0 ? b[v] - net * g.degree(v) / deg : 0.0;
      }
      break;
    }
  }
  return b;
}

std::vector<Demand> sample_demands(const Graph& g, const LaminarApproximator& approx, int count,
                                   uint64_t seed) {
  Rng rng(seed);
  std::vector<Demand> out;
  out.reserve(count);
  constexpr DemandKind kinds[] = {DemandKind::kPairs, DemandKind::kCluster, DemandKind::kSweep,
                                  DemandKind::kDegree};
  for (int i = 0; i < count; ++i) out.push_back(sample_demand(g, approx, kinds[i % 4], rng));
  return out;
}

namespace {

double quality_ratio(double estimate, double opt) {
  if (estimate == opt) return 1.0;  // covers 0/0 and inf/inf
  if (estimate <= 0.0) return kInfinity;
  return opt / estimate;
}

QualityReport finish_report(const LaminarApproximator& approx, std::vector<QualityRecord> recs,
                            double tol) {
  QualityReport r;
  r.records = std::move(recs);
  r.bound = approx.quality_bound;
  for (const QualityRecord& q : r.records) {
    r.min_ratio = std::min(r.min_ratio, q.ratio);
    r.max_ratio = std::max(r.max_ratio, q.ratio);
  }
  if (r.records.empty()) r.min_ratio = 1.0;
  r.pass = r.min_ratio >= 1.0 - tol && r.max_ratio <= r.bound;
  return r;
}

}  // namespace

QualityReport empirical_quality(const Graph& g, const LaminarApproximator& approx,
                                const std::vector<Demand>& demands, double tol) {
  std::vector<QualityRecord> recs(demands.size());
  const int64_t count = static_cast<int64_t>(demands.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < count; ++i) {
    QualityRecord& q = recs[i];
    q.id = static_cast<int>(i);
    q.estimate = estimate_congestion(approx, demands[i], demand_tolerance(demands[i]));
    q.opt = opt_congestion_maxflow(g, demands[i]);
    q.ratio = quality_ratio(q.estimate, q.opt);
  }
  return finish_report(approx, std::move(recs), tol);
}

QualityReport empirical_quality_serial(const Graph& g, const LaminarApproximator& approx,
                                       const std::vector<Demand>& demands, double tol) {
  std::vector<QualityRecord> recs(demands.size());
  for (size_t i = 0; i < demands.size(); ++i) {
    QualityRecord& q = recs[i];
    q.id = static_cast<int>(i);
    q.estimate = estimate_congestion(approx, demands[i], demand_tolerance(demands[i]));
    q.opt = opt_congestion_maxflow(g, demands[i]);
    q.ratio = quality_ratio(q.estimate, q.opt);
  }
  return finish_report(approx, std::move(recs), tol);
}

std::string QualityReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "id,estimate,opt,ratio\n";
  for (const QualityRecord& q : records)
    os << q.id << ',' << q.estimate << ',' << q.opt << ',' << q.ratio << '\n';
  return os.str();
}

bool check_property3(const Graph& g, const Partition& p_prev, const Partition& p_next,
                     double beta) {
  VertexWeighting send = restricted_degrees(g, partition_boundary_mask(g, p_next));
  VertexWeighting recv = restricted_degrees(g, partition_boundary_mask(g, p_prev));
  const double need = std::accumulate(send.begin(), send.end(), 0.0);
  if (need <= g.tau()) return true;
  const int src = g.n(), snk = g.n() + 1;
  FlowNetwork net(g.n() + 2);
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, beta * e.cap);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (send[v] > 0.0) net.add_arc(src, v, send[v]);
    if (recv[v] > 0.0) net.add_arc(v, snk, 0.5 * recv[v]);
  }
  double got = net.max_flow(src, snk, 1e-13 * (1.0 + beta * g.total_capacity()));
  return got >= need - g.tau();
}

MixingReport check_mixing_sampled(const Graph& g, const Partition& p_prev,
                                  const Partition& p_next, double alpha, int samples, Rng& rng) {
  // For v in C, ∂P_prev ∪ ∂C at v is ∂P_prev ∪ ∂P_next at v.
  VertexWeighting w(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    if (p_prev.cluster_of(e.u) != p_prev.cluster_of(e.v) ||
        p_next.cluster_of(e.u) != p_next.cluster_of(e.v)) {
      w[e.u] += e.cap;
      w[e.v] += e.cap;
    }
  }
  MixingReport rep;
  for (int s = 0; s < samples; ++s) {
    Demand b(g.n(), 0.0);
    const bool split = s % 2 == 1;
    for (const VertexSet& c : p_next.clusters()) {
      std::vector<Vertex> mem = c.members();
      std::shuffle(mem.begin(), mem.end(), rng);
      double pos = 0.0, neg = 0.0;
      for (size_t i = 0; i < mem.size(); ++i) {
        Vertex v = mem[i];
        double x = split ? (2 * i < mem.size() ? w[v] : -w[v]) : uniform(rng, -1.0, 1.0) * w[v];
        b[v] = x;
        (x > 0 ? pos : neg) += std::abs(x);
      }
      // Shrink the heavier side so that b_C(C) = 0.
      for (Vertex v : mem) {
        if (b[v] > 0 && pos > neg) b[v] *= neg / pos;
        if (b[v] < 0 && neg > pos) b[v] *= pos / neg;
      }
    }
    ++rep.samples;
    if (!routable(g, b, alpha)) ++rep.failures;
  }
  return rep;
}

FairnessAudit fairness_audit(const Graph& g, const std::vector<Partition>& levels,
                             int instances, uint64_t seed) {
  FairnessAudit audit;
  if (levels.empty() || g.n() == 0) return audit;
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int li = levels.size() > 1 ? pick(rng, static_cast<int>(levels.size()) - 1) : 0;
    const Partition& p_l = levels[li];
    const Partition& above = levels[std::min<size_t>(li + 1, levels.size() - 1)];
    const VertexSet& a = above.cluster(pick(rng, above.size()));
    VertexWeighting s_w(g.n(), 0.0), t_w(g.n(), 0.0);
    for (Vertex v : a) {
      if (rng() % 2) s_w[v] = uniform(rng, 0.0, 1.0) * g.degree(v);
      if (rng() % 2) t_w[v] = uniform(rng, 0.0, 1.0) * g.degree(v);
    }
    double gamma = uniform(rng, 0.001, 0.1);
    double eps = uniform(rng, 0.01, 0.5);
    ++audit.instances;
    try {
      AuxiliaryInstance inst = build_auxiliary(g, p_l, a, gamma, s_w, t_w);
      FairCutFlowPair pair = fair_cut(inst, eps);
      bool ok = validate_fair_pair(inst, pair, eps) &&
                std::abs(cut_value(inst.h, pair.cut) - pair.flow_value) <= inst.h.tau();
      if (!ok) ++audit.failures;
    } catch (const std::exception&) {
      ++audit.failures;
    }
  }
  return audit;
}

CheckResult check_laminar_refinement(const Graph& g, const LaminarApproximator& approx,
                                     const std::vector<Partition>& levels) {
  auto fail = [](std::string msg) { return CheckResult{false, std::move(msg)}; };
  const int n = g.n();
  if (approx.n != n || static_cast<int>(approx.order.size()) != n)
    return fail("approximator size mismatch");
  if (approx.L != static_cast<int>(levels.size())) return fail("level count mismatch");
  const int k = static_cast<int>(approx.nodes.size());
  std::vector<VertexSet> sets(k);
  for (int x = 0; x < k; ++x) sets[x] = approx.members(x);

  if (n <= 64) {
    if (!is_laminar(sets)) return fail("stored sets are not laminar");
  } else {
    for (int x = 0; x < k; ++x) {
      const ForestNode& a = approx.nodes[x];
      if (a.parent >= 0) {
        const ForestNode& p = approx.nodes[a.parent];
        if (a.lo < p.lo || a.hi > p.hi) return fail("child range escapes its parent");
      }
    }
  }

  std::vector<Partition> r = refinements(levels);
  std::set<VertexSet> stored(sets.begin(), sets.end());
  if (static_cast<int>(stored.size()) != k) return fail("duplicate stored set");
  std::set<VertexSet> expected;
  for (const Partition& p : r)
    for (const VertexSet& c : p.clusters()) expected.insert(c);
  if (stored != expected) return fail("stored sets differ from the union of refinements");
  for (Vertex v = 0; v < n; ++v)
    if (!stored.count(VertexSet({v}))) return fail("missing singleton " + std::to_string(v));

  for (int x = 0; x < k; ++x) {
    const ForestNode& nd = approx.nodes[x];
    const Partition& at = r[nd.level - 1];
    const VertexSet& c = at.cluster(at.cluster_of(sets[x][0]));
    if (c != sets[x]) return fail("node level does not match its refinement");
    if (nd.level < approx.L) {
      const Partition& higher = r[nd.level];
      if (higher.cluster(higher.cluster_of(sets[x][0])) == sets[x])
        return fail("set not stored at its highest level");
    }
    double delta = boundary_capacity(g, sets[x]);
    if (std::abs(delta - nd.delta) > g.tau()) return fail("cached boundary capacity is stale");
  }

  for (size_t i = 0; i + 1 < r.size(); ++i) {
    for (Vertex v = 0; v < n; ++v) {
      Vertex w = r[i].cluster(r[i].cluster_of(v))[0];
      if (r[i + 1].cluster_of(w) != r[i + 1].cluster_of(v))
        return fail("refinement chain broken at level " + std::to_string(i + 1));
    }
    for (const Edge& e : g.edges()) {
      bool lo = r[i].cluster_of(e.u) != r[i].cluster_of(e.v);
      bool hi = r[i + 1].cluster_of(e.u) != r[i + 1].cluster_of(e.v);
      if (hi && !lo) return fail("boundary inclusion fails at level " + std::to_string(i + 1));
      bool in_p = levels[i].cluster_of(e.u) != levels[i].cluster_of(e.v);
      if (lo && !hi && !in_p)
        return fail("new boundary edge outside the level boundary at level " +
                    std::to_string(i + 1));
    }
  }
  return {};
}

CheckResult check_hierarchy_structure(const Graph& g, const std::vector<Partition>& levels) {
  auto fail = [](std::string msg) { return CheckResult{false, std::move(msg)}; };
  if (levels.empty()) return fail("empty hierarchy");
  for (const Partition& p : levels)
    if (p.n() != g.n()) return fail("level over the wrong vertex count");
  if (levels.front().size() != g.n()) return fail("bottom level is not all singletons");
  if (!(levels.back().canonical() == connected_components(g).canonical()))
    return fail("top level is not the component partition");
  const double tol = g.tau();
  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    double a = partition_boundary_capacity(g, levels[i]);
    double b = partition_boundary_capacity(g, levels[i + 1]);
    if (b > a / 2.0 + tol) return fail("boundary does not halve at level " + std::to_string(i + 1));
    if (a <= tol) return fail("closed level below the top at level " + std::to_string(i + 1));
  }
  return {};
}

bool VerifyOutcome::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

VerifyOutcome run_suites(const Graph& g, const std::vector<Partition>& levels,
                         const SuiteOptions& options, const LaminarApproximator* stored) {
  VerifyOutcome out;
  const int L = static_cast<int>(levels.size());
  if (options.structure) {
    CheckResult c = check_hierarchy_structure(g, levels);
    out.suites.push_back({"structure", c.ok, c.message});
  }
  LaminarApproximator approx;
  bool assembled = true;
  std::string assemble_error;
  if (stored) {
    approx = *stored;
  } else {
    try {
      approx = assemble(g, levels, options.alpha, options.beta);
    } catch (const std::exception& e) {
      assembled = false;
      assemble_error = e.what();
    }
  }
  if (options.laminarity) {
    CheckResult c = assembled ? check_laminar_refinement(g, approx, levels)
                              : CheckResult{false, assemble_error};
    out.suites.push_back({"laminarity", c.ok, c.message});
  }
  if (options.property3) {
    SuiteResult s{"property3", true, ""};
    for (int i = 0; i + 1 < L && s.pass; ++i) {
      if (!check_property3(g, levels[i], levels[i + 1], options.beta)) {
        s.pass = false;
        s.detail = "level " + std::to_string(i + 2) + " at beta=" + std::to_string(options.beta);
      }
    }
    out.suites.push_back(s);
  }
  if (options.mixing) {
    SuiteResult s{"mixing", true, ""};
    Rng rng(options.seed);
    for (int i = 0; i + 1 < L && s.pass; ++i) {
      MixingReport rep = check_mixing_sampled(g, levels[i], levels[i + 1], options.alpha,
                                              options.samples, rng);
      if (!rep.pass()) {
        s.pass = false;
        s.detail = "level " + std::to_string(i + 2) + ": " + std::to_string(rep.failures) +
                   " of " + std::to_string(rep.samples) + " samples";
      }
    }
    out.suites.push_back(s);
  }
  if (options.fairness) {
    FairnessAudit a = fairness_audit(g, levels, std::min(options.samples, 50), options.seed);
    out.suites.push_back({"fairness", a.pass(),
                          std::to_string(a.failures) + " of " + std::to_string(a.instances)});
  }
  if (options.quality) {
    if (assembled) {
      out.quality = empirical_quality(
          g, approx, sample_demands(g, approx, options.samples, options.seed), options.tol);
      std::ostringstream os;
      os << "min_ratio=" << out.quality.min_ratio << " max_ratio=" << out.quality.max_ratio
         << " bound=" << out.quality.bound;
      out.suites.push_back({"quality", out.quality.pass, os.str()});
    } else {
      out.suites.push_back({"quality", false, assemble_error});
    }
  }
  return out;
}

std::vector<Partition> corrupt_by_merge(const std::vector<Partition>& levels, Rng& rng) {
  std::vector<int> candidates;
  for (int i = 1; i + 1 < static_cast<int>(levels.size()); ++i)
    if (levels[i].size() >= 2) candidates.push_back(i);
  if (candidates.empty() && !levels.empty() && levels[0].size() >= 2) candidates.push_back(0);
  std::vector<Partition> out = levels;
  if (candidates.empty()) return out;
  int li = candidates[pick(rng, static_cast<int>(candidates.size()))];
  const Partition& p = levels[li];
  int a = pick(rng, p.size());
  int b = pick(rng, p.size() - 1);
  if (b >= a) ++b;
  std::vector<int> label = p.labels();
  for (int& x : label) {
    if (x == b) x = a;
    if (x > b) --x;
  }
  out[li] = Partition::from_labels(label);
  return out;
}

}  // namespace conga
