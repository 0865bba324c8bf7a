#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "conga/generators.h"
#include "conga/partitioner.h"
#include "conga/verifier.h"
#include "helpers.h"

using namespace conga;
using namespace conga::testing;

namespace {

BuildOptions tuned(uint64_t seed = 1) {
  BuildOptions o;
  o.constants.c_phi = 0.01;
  o.seed = seed;
  return o;
}

bool close_rel(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

SuiteOptions suite_for(const Hierarchy& h, int samples) {
  SuiteOptions o;
  o.samples = samples;
  o.alpha = h.alpha();
  o.beta = h.beta();
  return o;
}

}  // namespace

TEST_CASE("brute-force optimum examples") {
  Graph edge = make_graph(2, {{0, 1, 2}});
  CHECK(opt_congestion_bruteforce(edge, {0.0, 0.0}) == 0.0);
  CHECK(opt_congestion_bruteforce(edge, {1.0, -1.0}) == doctest::Approx(0.5));
  CHECK(opt_congestion_bruteforce_serial(edge, {1.0, -1.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(opt_congestion_bruteforce(path_graph(17), Demand(17, 0.0)), InputError);

  Graph split = make_graph(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK(std::isinf(opt_congestion_bruteforce(split, {1.0, 0.0, -1.0, 0.0})));
  CHECK(opt_congestion_bruteforce(split, {1.0, -1.0, 2.0, -2.0}) == doctest::Approx(2.0));
}

TEST_CASE("max-flow optimum examples") {
  Graph p = path_graph(3);
  CHECK(opt_congestion_maxflow(p, {0.0, 0.0, 0.0}) == 0.0);
  CHECK(opt_congestion_maxflow(p, {1.0, 0.0, -1.0}) == doctest::Approx(1.0).epsilon(1e-6));
  Graph split = make_graph(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK(std::isinf(opt_congestion_maxflow(split, {1.0, 0.0, -1.0, 0.0})));
  CHECK(opt_congestion_maxflow(split, {0.5, -0.5, 2.0, -2.0}) == doctest::Approx(2.0));
}

TEST_CASE("routable decides feasibility at a given congestion") {
  Graph p = path_graph(3);
  Demand b = {1.0, 0.0, -1.0};
  CHECK(routable(p, b, 1.0));
  CHECK_FALSE(routable(p, b, 0.99));
  Graph cycle = unit_cycle4();
  CHECK(routable(cycle, {1.0, 0.0, -1.0, 0.0}, 0.5));
  CHECK_FALSE(routable(cycle, {1.0, 0.0, -1.0, 0.0}, 0.49));
}

TEST_CASE("property: the two optimum oracles agree on small graphs") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 11;
    Graph g = random_connected(n, rng, 1 + trial % 9, static_cast<int>(rng() % (2 * n)));
    Demand b = random_demand(n, rng);
    double brute = opt_congestion_bruteforce(g, b);
    double flow = opt_congestion_maxflow(g, b);
    CHECK(close_rel(brute, flow, 1e-6));
    CHECK(brute == opt_congestion_bruteforce_serial(g, b));
    CHECK(routable(g, b, flow * (1.0 + 1e-5)));
    if (flow > 1e-9) CHECK_FALSE(routable(g, b, flow * (1.0 - 1e-4)));
  }
}

TEST_CASE("sampled demands are balanced on every component") {
  Graph g = make_graph(7, {{0, 1, 1}, {1, 2, 2}, {3, 4, 1}, {4, 5, 3}, {5, 6, 1}});
  Hierarchy h = build_hierarchy(g, tuned());
  LaminarApproximator a = assemble(g, h);
  Partition comps = connected_components(g);
  Rng rng(5);
  for (DemandKind k : {DemandKind::kPairs, DemandKind::kCluster, DemandKind::kSweep,
                       DemandKind::kDegree}) {
    for (int i = 0; i < 20; ++i) {
      Demand b = sample_demand(g, a, k, rng);
      REQUIRE(b.size() == 7u);
      for (const VertexSet& c : comps.clusters()) {
        double net = 0.0;
        for (Vertex v : c) net += b[v];
        CHECK(std::abs(net) <= 1e-9);
      }
    }
  }
  std::vector<Demand> ds = sample_demands(g, a, 13, 7);
  CHECK(ds.size() == 13u);
  CHECK(sample_demands(g, a, 13, 7) == ds);
}

TEST_CASE("empirical quality on a build") {
  std::mt19937_64 rng(92);
  Graph g = random_connected(32, rng, 16);
  Hierarchy h = build_hierarchy(g, tuned());
  LaminarApproximator a = assemble(g, h);
  std::vector<Demand> ds = sample_demands(g, a, 60, 3);
  QualityReport r = empirical_quality(g, a, ds);
  REQUIRE(r.records.size() == 60u);
  for (const QualityRecord& q : r.records) {
    CHECK(q.ratio >= 1.0 - kRatioTolerance);
    CHECK(q.estimate <= q.opt * (1.0 + 1e-6) + 1e-12);
  }
  CHECK(r.bound == doctest::Approx(a.quality_bound));
  CHECK(r.pass == (r.max_ratio <= r.bound));
  CHECK(r.pass);

  QualityReport s = empirical_quality_serial(g, a, ds);
  for (size_t i = 0; i < ds.size(); ++i) {
    CHECK(s.records[i].estimate == r.records[i].estimate);
    CHECK(s.records[i].opt == r.records[i].opt);
  }

  std::istringstream csv(r.to_csv());
  std::string line;
  std::getline(csv, line);
  CHECK(line == "id,estimate,opt,ratio");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 60);
}

TEST_CASE("singletons plus the whole miss the middle of a path") {
  const int n = 16;
  Graph g = path_graph(n);
  LaminarApproximator trivial =
      assemble(g, {Partition::singletons(n), Partition::whole(n)}, 1.0, 1.0);
  Demand b(n);
  for (int v = 0; v < n; ++v) b[v] = v < n / 2 ? 1.0 : -1.0;
  QualityReport r = empirical_quality(g, trivial, {b});
  // Singletons see at most 1 per unit of boundary; the middle edge carries n/2.
  CHECK(r.records[0].estimate == doctest::Approx(1.0));
  CHECK(r.records[0].opt == doctest::Approx(n / 2.0).epsilon(1e-6));
  CHECK(r.max_ratio == doctest::Approx(n / 2.0).epsilon(1e-6));
}

TEST_CASE("property 3 feasibility") {
  Graph p = path_graph(3);
  CHECK(check_property3(p, Partition::whole(3), Partition::whole(3), 1.0));
  // Unit path cut into {0,1},{2}: the cheapest flow has congestion 1/2.
  Partition two(3, {VertexSet({0, 1}), VertexSet({2})});
  CHECK(check_property3(p, Partition::singletons(3), two, 0.5 + 1e-9));
  CHECK_FALSE(check_property3(p, Partition::singletons(3), two, 0.45));
  // Same boundary on both sides: every vertex sends deg but absorbs deg/2.
  Graph c = unit_cycle4();
  Partition halves(4, {VertexSet({0, 1}), VertexSet({2, 3})});
  CHECK_FALSE(check_property3(c, halves, halves, 1.0));
  CHECK_FALSE(check_property3(c, halves, halves, 1e6));
  CHECK(check_property3(c, Partition::singletons(4), halves, 1.0));
}

TEST_CASE("sampled mixing") {
  Graph p = path_graph(8);
  Rng rng(9);
  MixingReport zero = check_mixing_sampled(p, Partition::whole(8), Partition::whole(8), 1.0, 10, rng);
  CHECK(zero.samples == 10);
  CHECK(zero.pass());
  MixingReport loose =
      check_mixing_sampled(p, Partition::singletons(8), Partition::whole(8), 1e9, 20, rng);
  CHECK(loose.pass());
  MixingReport tight =
      check_mixing_sampled(p, Partition::singletons(8), Partition::whole(8), 0.01, 20, rng);
  CHECK(tight.failures > 0);
}

TEST_CASE("fairness audit on a build") {
  std::mt19937_64 rng(93);
  Graph g = random_connected(24, rng, 16);
  Hierarchy h = build_hierarchy(g, tuned());
  FairnessAudit audit = fairness_audit(g, h.levels, 30, 4);
  CHECK(audit.instances == 30);
  CHECK(audit.pass());
}

TEST_CASE("laminar refinement check catches tampering") {
  std::mt19937_64 rng(94);
  Graph g = random_connected(30, rng, 16);
  Hierarchy h = build_hierarchy(g, tuned());
  LaminarApproximator a = assemble(g, h);
  CHECK(check_laminar_refinement(g, a, h.levels).ok);

  LaminarApproximator stale = a;
  stale.nodes.back().delta += 1.0;
  CHECK_FALSE(check_laminar_refinement(g, stale, h.levels).ok);

  LaminarApproximator shuffled = a;
  std::swap(shuffled.order.front(), shuffled.order.back());
  CHECK_FALSE(check_laminar_refinement(g, shuffled, h.levels).ok);

  std::vector<Partition> fewer(h.levels.begin() + 1, h.levels.end());
  CHECK_FALSE(check_laminar_refinement(g, a, fewer).ok);
}

TEST_CASE("hierarchy structure check") {
  Graph g = path_graph(4);
  Partition halves(4, {VertexSet({0, 1}), VertexSet({2, 3})});
  CHECK(check_hierarchy_structure(g, {Partition::singletons(4), halves, Partition::whole(4)}).ok);
  CHECK_FALSE(check_hierarchy_structure(g, {halves, Partition::whole(4)}).ok);
  CHECK_FALSE(check_hierarchy_structure(g, {Partition::singletons(4), halves}).ok);
  // 3 -> 2 is not a halving.
  Partition odd(4, {VertexSet({0}), VertexSet({1, 2}), VertexSet({3})});
  CHECK_FALSE(check_hierarchy_structure(g, {Partition::singletons(4), odd, Partition::whole(4)}).ok);
  CHECK_FALSE(check_hierarchy_structure(g, {}).ok);
}

TEST_CASE("all suites pass on a real build and merges are detected") {
  GenOptions go;
  go.max_cap = 16;
  Graph g = generate("path", 64, go);
  Hierarchy h = build_hierarchy(g, tuned());
  REQUIRE(h.L() >= 3);
  SuiteOptions o = suite_for(h, 40);
  LaminarApproximator a = assemble(g, h);
  VerifyOutcome out = run_suites(g, h.levels, o, &a);
  for (const SuiteResult& s : out.suites) {
    INFO(s.name << ": " << s.detail);
    CHECK(s.pass);
  }
  CHECK(out.suites.size() == 6u);
  CHECK(out.pass());

  Rng rng(11);
  int detected = 0;
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Partition> bad = corrupt_by_merge(h.levels, rng);
    int changed = 0;
    for (int i = 0; i < h.L(); ++i) {
      if (bad[i] == h.levels[i]) continue;
      ++changed;
      CHECK(bad[i].size() == h.levels[i].size() - 1);
    }
    CHECK(changed == 1);
    SuiteOptions fast = o;
    fast.quality = fast.mixing = fast.fairness = false;
    detected += !run_suites(g, bad, fast, &a).pass();
  }
  CHECK(detected == 6);

  // Merging two clusters that share no edge keeps every boundary intact, so
  // the corrupted chain is itself a valid hierarchy once re-assembled.
  Partition mid = h.levels[1];
  int far = -1;
  for (int c = 1; c < mid.size() && far < 0; ++c) {
    bool touches = false;
    for (const Edge& e : g.edges()) {
      int cu = mid.cluster_of(e.u), cv = mid.cluster_of(e.v);
      touches |= (cu == 0 && cv == c) || (cu == c && cv == 0);
    }
    if (!touches) far = c;
  }
  if (far > 0) {
    std::vector<int> label = mid.labels();
    for (int& x : label) x = x == far ? 0 : (x > far ? x - 1 : x);
    std::vector<Partition> merged = h.levels;
    merged[1] = Partition::from_labels(label);
    SuiteOptions fast = o;
    fast.mixing = fast.fairness = false;
    CHECK(run_suites(g, merged, fast).pass());
    CHECK_FALSE(run_suites(g, merged, fast, &a).pass());
  }
}
