#ifndef CONGA_CUT_MATCHING_H_
#define CONGA_CUT_MATCHING_H_

#include <cstdint>
#include <random>
#include <vector>

#include "conga/flow.h"
#include "conga/graph.h"
#include "conga/params.h"

namespace conga {

using Rng = std::mt19937_64;

// Fractional matching between left and right vertices of one round.
struct MatchingGraph {
  struct Pair {
    int u, v;
    double cap;
  };
  std::vector<Pair> pairs;
  VertexWeighting degrees(int n) const;
};

// Dense |A| x |A| flow matrix, only used in test mode.
using FlowMatrix = std::vector<std::vector<double>>;

struct SplitResult {
  std::vector<int> left, right;
  double eta = 0.0;
};

struct RoundFlow {
  std::vector<int> cut;  // S_t as local indices into A
  EdgeFlow flow;         // f_t on the original graph
  MatchingGraph matching;
};

struct RoundDiagnostics {
  int left_size = 0;
  double cut_weight = 0.0;      // d(S_t)
  double cut_boundary = 0.0;    // boundary of S_t inside G[A]
  double flow_congestion = 0.0;
  // Dense mode only.
  double psi_before = 0.0;
  double psi_after = 0.0;
  double energy_bound = 0.0;
  double row_sum_error = 0.0;
};

struct CMGResult {
  VertexSet R;
  std::vector<MatchingGraph> matchings;  // local indices into A
  int rounds_run = 0;
  bool early_termination = false;
  bool mixing_claimed = true;
  std::vector<RoundDiagnostics> rounds;
};

struct CMGOptions {
  bool dense = false;
  int dense_cap = 512;
};

std::vector<double> random_unit_orthogonal(int n, Rng& rng);

// p(v) = <F(v)/d(v), r> via the inner-product recurrence. Indices are local.
std::vector<double> project_flow_vectors(const std::vector<MatchingGraph>& matchings,
                                         const VertexWeighting& d,
                                         const std::vector<double>& r);

// Splits the active vertices with positive weight by projection value;
// active zero-weight vertices join the right side.
SplitResult split_by_projection(const std::vector<double>& p, const VertexWeighting& d,
                                const std::vector<char>& active);

// One fair-cut round. left/right are local indices into A; d is over A.
RoundFlow cmg_round_flow(const Graph& g, const Partition& p_l, const VertexSet& a,
                         const std::vector<int>& left, const std::vector<int>& right,
                         const CMGParams& params);

FlowMatrix initial_flow_matrix(const VertexWeighting& d);
FlowMatrix update_flow_matrix(const FlowMatrix& f, const MatchingGraph& m,
                              const VertexWeighting& d, int dense_cap = 512);
double potential(const FlowMatrix& f, const VertexWeighting& d,
                 const std::vector<char>& active);
// Half the matching energy: lower bound on the potential drop.
double matching_energy(const FlowMatrix& f, const MatchingGraph& m, const VertexWeighting& d);

CMGResult run_cmg(const Graph& g, const Partition& p_l, const VertexSet& a,
                  const CMGParams& params, uint64_t seed, const CMGOptions& options = {});

}  // namespace conga

#endif  // CONGA_CUT_MATCHING_H_
