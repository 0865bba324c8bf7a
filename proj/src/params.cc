#include "conga/params.h"

#include <algorithm>
#include <cmath>

#include "conga/common.h"

namespace conga {

LevelParams LevelParams::make(int n, double W, const Constants& c) {
  if (c.c_t <= 0.0 || c.c_phi <= 0.0 || c.c_kappa <= 0.0)
    throw InputError("parameter constants must be positive");
  LevelParams p;
  p.log_nw = std::max(1.0, std::log2(std::max(1.0, n * W)));
  const double l3 = p.log_nw * p.log_nw * p.log_nw;
  p.phi = std::min(1.0 / 24.0, 1.0 / (c.c_phi * l3));
  p.kappa = std::max(1.0, c.c_kappa * l3);
  p.T = std::max(1, static_cast<int>(std::ceil(c.c_t * p.log_nw * p.log_nw)));
  return p;
}

CMGParams CMGParams::make(double phi, double kappa, int T) {
  if (!(phi > 0.0) || kappa < 1.0 || T < 1) throw InputError("invalid CMG parameters");
  CMGParams p;
  p.phi = phi;
  p.kappa = kappa;
  p.T = T;
  p.eps = 1.0 / (18.0 * T * T);
  p.gamma = p.eps * phi / 2.0;
  p.beta = std::max(1.0, (24.0 * phi + p.eps * p.gamma) * (kappa + 2.0));
  return p;
}

TrimParams TrimParams::make(double phi, double kappa, double eps) {
  if (!(phi > 0.0) || kappa < 1.0 || !(eps > 0.0 && eps <= 1.0))
    throw InputError("invalid trimming parameters");
  TrimParams p;
  p.phi = phi;
  p.kappa = kappa;
  p.eps = eps;
  p.gamma = eps * phi / 2.0;
  p.beta = std::max(1.0, (12.0 * phi + eps * p.gamma) * (kappa + 2.0));
  return p;
}

}  // namespace conga
