#pragma once
//
// Third-order WENO reconstruction (two linear sub-stencils, Jiang-Shu
// smoothness indicators). Linear weights are (1/3, 2/3) for the right face
// and (2/3, 1/3) for the left face, ordered (upwind stencil, central stencil).
//

#include <vector>

namespace hemo {

inline constexpr double kWenoEps = 1e-6;

/// Boundary-extrapolated values at the left (minus) and right (plus) face of a cell.
struct FacePair {
  double minus;
  double plus;
};

inline FacePair weno3(double qm, double q0, double qp, double eps = kWenoEps) {
  const double b0 = (q0 - qm) * (q0 - qm);
  const double b1 = (qp - q0) * (qp - q0);
  const double s0 = 1.0 / ((eps + b0) * (eps + b0));
  const double s1 = 1.0 / ((eps + b1) * (eps + b1));

  // right face x_{i+1/2}
  const double r0 = 1.5 * q0 - 0.5 * qm;
  const double r1 = 0.5 * (q0 + qp);
  const double wr0 = s0 / 3.0, wr1 = 2.0 * s1 / 3.0;
  const double plus = (wr0 * r0 + wr1 * r1) / (wr0 + wr1);

  // left face x_{i-1/2}
  const double l0 = 0.5 * (qm + q0);
  const double l1 = 1.5 * q0 - 0.5 * qp;
  const double wl0 = 2.0 * s0 / 3.0, wl1 = s1 / 3.0;
  const double minus = (wl0 * l0 + wl1 * l1) / (wl0 + wl1);

  return {minus, plus};
}

/// Face values of cells lo..hi (storage indices) of one component.
inline void weno3_field(const std::vector<double>& q, int lo, int hi, double eps,
                        std::vector<double>& minus, std::vector<double>& plus) {
  minus.resize(q.size());
  plus.resize(q.size());
  for (int j = lo; j <= hi; ++j) {
    const FacePair f = weno3(q[j - 1], q[j], q[j + 1], eps);
    minus[j] = f.minus;
    plus[j] = f.plus;
  }
}

}  // namespace hemo
