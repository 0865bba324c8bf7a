#ifndef CONGA_VERIFIER_H_
#define CONGA_VERIFIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "conga/approximator.h"
#include "conga/cut_matching.h"
#include "conga/graph.h"

namespace conga {

// Max over proper cuts S of |b(S)|/δS; +inf if a closed cut carries demand.
// Throws InputError for n > 16.
double opt_congestion_bruteforce(const Graph& g, const Demand& b);
double opt_congestion_bruteforce_serial(const Graph& g, const Demand& b);

// Minimal congestion at which b routes, by Dinkelbach iteration on the
// most violated cut with a bisection fallback. +inf if b is unbalanced on
// some component.
double opt_congestion_maxflow(const Graph& g, const Demand& b, double tol = 1e-6);

// One max-flow: does b route with every edge capacity scaled by lambda?
bool routable(const Graph& g, const Demand& b, double lambda);

// Demand samplers; every sample is balanced on each connected component.
enum class DemandKind { kPairs, kCluster, kSweep, kDegree };
Demand sample_demand(const Graph& g, const LaminarApproximator& approx, DemandKind kind,
                     Rng& rng);
// Cycles through all kinds.
std::vector<Demand> sample_demands(const Graph& g, const LaminarApproximator& approx,
                                   int count, uint64_t seed);

struct QualityRecord {
  int id = 0;
  double estimate = 0.0;
  double opt = 0.0;
  double ratio = 1.0;  // opt / estimate
};

struct QualityReport {
  std::vector<QualityRecord> records;
  double min_ratio = kInfinity;
  double max_ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string to_csv() const;
};

inline constexpr double kRatioTolerance = 1e-6;

QualityReport empirical_quality(const Graph& g, const LaminarApproximator& approx,
                                const std::vector<Demand>& demands,
                                double tol = kRatioTolerance);
QualityReport empirical_quality_serial(const Graph& g, const LaminarApproximator& approx,
                                       const std::vector<Demand>& demands,
                                       double tol = kRatioTolerance);

// Is there a flow at congestion beta where every v sends deg_{∂P_next}(v) and
// receives at most deg_{∂P_prev}(v)/2?
bool check_property3(const Graph& g, const Partition& p_prev, const Partition& p_next,
                     double beta);

struct MixingReport {
  int samples = 0;
  int failures = 0;
  bool pass() const { return failures == 0; }
};

// Draws per-cluster demands bounded by deg_{∂P_prev ∪ ∂C} on each cluster C
// of p_next and tests the sum at congestion alpha.
MixingReport check_mixing_sampled(const Graph& g, const Partition& p_prev,
                                  const Partition& p_next, double alpha, int samples, Rng& rng);

struct FairnessAudit {
  int instances = 0;
  int failures = 0;
  bool pass() const { return failures == 0; }
};

// Random auxiliary instances G[A, gamma, s, t] with A drawn from the levels.
FairnessAudit fairness_audit(const Graph& g, const std::vector<Partition>& levels,
                             int instances, uint64_t seed);

struct CheckResult {
  bool ok = true;
  std::string message;
};

// Pairwise nesting of all stored sets, the refinement chain, and the
// boundary inclusions between consecutive refinements.
CheckResult check_laminar_refinement(const Graph& g, const LaminarApproximator& approx,
                                     const std::vector<Partition>& levels);

// Bottom level singletons, top level the components, boundaries halving and
// only the top level closed.
CheckResult check_hierarchy_structure(const Graph& g, const std::vector<Partition>& levels);

struct SuiteOptions {
  int samples = 100;
  double beta = 1.0;
  double alpha = 1.0;
  uint64_t seed = 1;
  double tol = kRatioTolerance;
  bool quality = true, property3 = true, mixing = true, fairness = true, laminarity = true,
       structure = true;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOutcome {
  std::vector<SuiteResult> suites;
  QualityReport quality;
  bool pass() const;
};

// Runs the selected suites against levels re-read from a hierarchy. Without
// a stored approximator one is re-assembled from the levels.
VerifyOutcome run_suites(const Graph& g, const std::vector<Partition>& levels,
                         const SuiteOptions& options,
                         const LaminarApproximator* stored = nullptr);

// Merges two clusters of one randomly chosen level above the bottom.
std::vector<Partition> corrupt_by_merge(const std::vector<Partition>& levels, Rng& rng);

}  // namespace conga

#endif  // CONGA_VERIFIER_H_
