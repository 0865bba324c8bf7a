#ifndef CONGA_TRIMMING_H_
#define CONGA_TRIMMING_H_

#include "conga/flow.h"
#include "conga/graph.h"
#include "conga/params.h"

namespace conga {

struct TrimResult {
  VertexSet B;
  VertexWeighting t_vec;  // over V, supported on A \ (R ∪ B)
  EdgeFlow g_flow;        // on G, supported on G[A \ (R ∪ B)]
  // True when the certificate came from re-solving on G[A \ (R ∪ B)] because
  // the restricted fair flow left some vertex short of its boundary degree.
  bool certificate_resolved = false;
};

TrimResult trim(const Graph& g, const Partition& p_l, const VertexSet& a, const VertexSet& r,
                const TrimParams& params);

struct TrimCheck {
  bool property1 = false;
  bool property2 = false;
  bool property4 = false;
  bool ok() const { return property1 && property2 && property4; }
};

TrimCheck check_trim(const Graph& g, const Partition& p_l, const VertexSet& a,
                     const VertexSet& r, const TrimResult& res, double phi, double eps);
inline bool validate_trim(const Graph& g, const Partition& p_l, const VertexSet& a,
                          const VertexSet& r, const TrimResult& res, double phi, double eps) {
  return check_trim(g, p_l, a, r, res, phi, eps).ok();
}

// deg_{∂_{G[A]} X}(v) for v in A \ X, zero elsewhere.
VertexWeighting inner_boundary_degree(const Graph& g, const VertexSet& a, const VertexSet& x);

}  // namespace conga

#endif  // CONGA_TRIMMING_H_
