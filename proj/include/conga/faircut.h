#ifndef CONGA_FAIRCUT_H_
#define CONGA_FAIRCUT_H_

#include <memory>
#include <vector>

#include "conga/flow.h"
#include "conga/graph.h"

namespace conga {

class LaminarApproximator;

// G[A, gamma, s, t]: G[A] plus hub x and terminals s, t.
struct AuxiliaryInstance {
  Graph h;
  Vertex x_id = -1, s_id = -1, t_id = -1;
  std::vector<Vertex> back_map;      // local vertex -> original vertex (first |A| ids)
  std::vector<EdgeId> edge_origin;   // h edge -> original edge, -1 for added edges
  double gamma = 0.0;
  VertexWeighting s_weights, t_weights;  // indexed by local vertex
  VertexWeighting marked_degree;         // deg_{∂P_L ∪ ∂A} by local vertex
  int num_a() const { return static_cast<int>(back_map.size()); }
};

// Weightings are over the original vertex set and must vanish outside A.
AuxiliaryInstance build_auxiliary(const Graph& g, const Partition& p_l, const VertexSet& a,
                                  double gamma, const VertexWeighting& s_w,
                                  const VertexWeighting& t_w);

// deg_{∂P_L ∪ ∂A}(v) for v in A, zero elsewhere.
VertexWeighting marked_degree(const Graph& g, const Partition& p_l, const VertexSet& a);

struct FairCutFlowPair {
  VertexSet cut;   // contains s, excludes t
  EdgeFlow flow;   // feasible s-t flow on h
  double fairness = 1.0;
  double flow_value = 0.0;
};

// Source of fair cut/flow pairs. The approximator argument is reserved for
// backends that precondition on a congestion-approximator of h.
class FairCutBackend {
 public:
  virtual ~FairCutBackend() = default;
  virtual FairCutFlowPair solve(const Graph& h, Vertex s, Vertex t, double eps,
                                const LaminarApproximator* approx) const = 0;
};

// Exact max-flow/min-cut; always 1-fair.
class ExactBackend : public FairCutBackend {
 public:
  FairCutFlowPair solve(const Graph& h, Vertex s, Vertex t, double eps,
                        const LaminarApproximator* approx) const override;
};

const FairCutBackend& default_backend();

FairCutFlowPair fair_cut(const AuxiliaryInstance& inst, double eps,
                         const FairCutBackend& backend = default_backend(),
                         const LaminarApproximator* approx = nullptr);

// Smallest alpha such that every cut edge carries at least c/alpha out of S.
double measured_fairness(const Graph& h, const VertexSet& cut, const EdgeFlow& f);

bool validate_fair_pair(const Graph& h, Vertex s, Vertex t, const FairCutFlowPair& pair,
                        double eps);
bool validate_fair_pair(const AuxiliaryInstance& inst, const FairCutFlowPair& pair,
                        double eps);

// Total capacity of edges leaving the cut.
double cut_value(const Graph& h, const VertexSet& cut);

}  // namespace conga

#endif  // CONGA_FAIRCUT_H_
