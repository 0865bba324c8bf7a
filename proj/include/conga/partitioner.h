#ifndef CONGA_PARTITIONER_H_
#define CONGA_PARTITIONER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "conga/flow.h"
#include "conga/graph.h"
#include "conga/params.h"

namespace conga {

struct BuildOptions {
  Constants constants;
  uint64_t seed = 1;
  bool check_star = true;  // re-check the routing assumption on every call
  int threads = 0;         // 0 keeps the OpenMP default
  int dense_cap = 0;       // run the dense flow-matrix diagnostics on calls up to this size
};

enum class RecursionCase { kSplit = 1, kEmit = 2, kDegenerate = 3 };

struct RecursionNode {
  VertexSet A;
  int depth = 0;
  RecursionCase outcome = RecursionCase::kEmit;
  double weight = 0.0;           // d(A)
  double removed_weight = 0.0;   // d(R)
  VertexSet R, B;
  std::vector<double> child_weights;  // d'(A') per recursive child
  int cmg_rounds = 0;
  bool star_ok = true;
  bool certificate_resolved = false;
  bool dense = false;
  double max_row_sum_error = 0.0;
  // min over rounds of (psi_before - psi_after) - energy_bound
  double min_energy_slack = 0.0;
};

struct EmittedCluster {
  VertexSet C;
  int cmg_rounds = 0;
  bool mixing_claimed = true;
  int matching_pairs = 0;
};

struct LevelCertificate {
  std::vector<EdgeFlow> depth_flows;
  std::vector<EdgeMask> depth_edges;  // E_d
  EdgeFlow level_flow;
  double beta = 0.0;  // congestion of level_flow
  bool level_flow_resolved = false;  // cancellation bound failed; direct solve used
  std::vector<RecursionNode> nodes;
  std::vector<EmittedCluster> clusters;
  int max_depth = 0;
  double max_shrink = 0.0;  // max over recursion edges of d'(A')/d(A)
  int star_failures = 0;
};

struct NextLevelResult {
  Partition partition;
  LevelCertificate certificate;
};

struct Hierarchy {
  std::vector<Partition> levels;
  std::vector<LevelCertificate> certificates;  // certificates[i] builds levels[i+1]
  LevelParams params;
  Constants constants;
  uint64_t seed = 0;
  bool connected = true;

  int L() const { return static_cast<int>(levels.size()); }
  double alpha() const { return params.alpha(); }
  // Largest measured level-flow congestion, at least 1.
  double beta() const;
  std::vector<double> boundary_sequence(const Graph& g) const;
};

NextLevelResult next_level(const Graph& g, const std::vector<Partition>& levels,
                           const LevelParams& params, const BuildOptions& options);

Hierarchy build_hierarchy(const Graph& g, const BuildOptions& options = {});

// Sums the per-depth flows and turns them into a flow where every v sends
// deg_{∂P_next}(v) and receives at most deg_{∂P_L}(v)/2.
// Throws InternalError when some vertex receives more than a third of
// deg_{∂P_L ∪ ∂P_next}(v) before cancellation.
EdgeFlow assemble_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next,
                             const std::vector<EdgeFlow>& depth_flows);
std::optional<EdgeFlow> try_assemble_level_flow(const Graph& g, const Partition& p_l,
                                                const Partition& p_next,
                                                const std::vector<EdgeFlow>& depth_flows);

// Same send/receive contract solved directly by max-flow at the smallest
// congestion found by doubling and bisection. Throws InternalError if no
// congestion works.
EdgeFlow solve_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next);

struct LevelFlowCheck {
  bool ok = false;
  double congestion = 0.0;
};
LevelFlowCheck check_level_flow(const Graph& g, const Partition& p_l, const Partition& p_next,
                                const EdgeFlow& f);

// One max-flow: sources c_G({v}, V\A) on A, sinks deg_{∂P_L}, edges scaled by kappa.
bool check_star_assumption(const Graph& g, const Partition& p_l, const VertexSet& a,
                           double kappa);

// Deterministic per-instance seed.
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c);

}  // namespace conga

#endif  // CONGA_PARTITIONER_H_
