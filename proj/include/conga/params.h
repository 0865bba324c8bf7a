#ifndef CONGA_PARAMS_H_
#define CONGA_PARAMS_H_

#include <cstdint>

namespace conga {

// Multipliers applied to the polylog parameter formulas.
struct Constants {
  double c_t = 1.0;
  double c_phi = 1.0;
  double c_kappa = 1.0;
};

// Parameters shared by every recursive call while building one level.
struct LevelParams {
  double log_nw = 1.0;  // max(1, log2(n W))
  double phi = 0.0;     // min(1/24, 1/(c_phi log^3))
  double kappa = 1.0;   // max(1, c_kappa log^3)
  int T = 1;            // ceil(c_t log^2)

  static LevelParams make(int n, double W, const Constants& c);
  // Mixing congestion certified by the cut-matching game.
  double alpha() const { return 5.0 * T / phi; }
};

struct CMGParams {
  double phi = 0.0;
  double kappa = 1.0;
  int T = 1;
  double eps = 0.0;    // 1/(18 T^2)
  double gamma = 0.0;  // eps phi / 2
  double beta = 1.0;   // max(1, (24 phi + eps gamma)(kappa + 2))

  static CMGParams make(double phi, double kappa, int T);
};

struct TrimParams {
  double phi = 0.0;
  double kappa = 1.0;
  double eps = 0.0;    // 1/(4T) when driven by the partitioner
  double gamma = 0.0;  // eps phi / 2
  double beta = 1.0;   // max(1, (12 phi + eps gamma)(kappa + 2))

  static TrimParams make(double phi, double kappa, double eps);
};

}  // namespace conga

#endif  // CONGA_PARAMS_H_
