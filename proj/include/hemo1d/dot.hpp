#pragma once
//
// Path-conservative Dumbser-Osher-Toro fluctuations for the homogeneous part
// of the augmented system
//
//   Q_t + M(Q) Q_x = 0,  Q = (A, Au, p),
//   M = [[0, 1, 0], [-u^2, 2u, A/rho], [0, E0 G(A), 0]].
//
// Wall parameters are carried along the path but have no flux of their own:
// they only enter through M. With a straight-line path the fluctuation
// contributions are
//
//   D-/+ = 1/2 sum_g w_g (M(psi_g) -/+ |M(psi_g)|) (Q_R - Q_L)
//
// where D- updates the cell left of the interface and D+ the one on the right.
//

#include <array>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "hemo1d/constitutive.hpp"
#include "hemo1d/linalg.hpp"

namespace hemo {

/// State plus the wall parameters that enter the quasi-linear matrix.
struct ExtState {
  double A = 0.0, Au = 0.0, p = 0.0;
  double A0 = 0.0, h0 = 0.0, E0 = 0.0, E_inf = 0.0, p0 = 0.0;
  double eta = 0.0;  // carried for viscous closures; not part of M

  Vec3 q() const { return {A, Au, p}; }
  CellState cell() const { return {A, Au, p}; }
  WallModel wall(VesselKind kind) const { return {A0, h0, E0, E_inf, eta, 0.0, p0, kind}; }

  friend ExtState lerp(const ExtState& a, const ExtState& b, double s) {
    auto mix = [s](double x, double y) { return x + s * (y - x); };
    return {mix(a.A, b.A),   mix(a.Au, b.Au),   mix(a.p, b.p),         mix(a.A0, b.A0),
            mix(a.h0, b.h0), mix(a.E0, b.E0),   mix(a.E_inf, b.E_inf), mix(a.p0, b.p0),
            mix(a.eta, b.eta)};
  }
};

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
  int n = 3;
  std::array<double, 5> nodes{};
  std::array<double, 5> weights{};

  explicit GaussRule(int points = 3) : n(points) {
    switch (points) {
      case 1: set({0.0}, {2.0}); break;
      case 2: set({-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}); break;
      case 3:
        set({-0.7745966692414834, 0.0, 0.7745966692414834},
            {0.5555555555555556, 0.8888888888888888, 0.5555555555555556});
        break;
      case 4:
        set({-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
            {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538});
        break;
      case 5:
        set({-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
             0.9061798459386640},
            {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
             0.2369268850561891});
        break;
      default: throw ParameterError("GaussRule: supported node counts are 1..5");
    }
  }

 private:
  void set(std::initializer_list<double> x, std::initializer_list<double> w) {
    int i = 0;
    for (double v : x) nodes[i++] = 0.5 * (v + 1.0);
    i = 0;
    for (double v : w) weights[i++] = 0.5 * v;
  }
};

inline Mat3 quasilinear_matrix(const CellState& s, const WallModel& w, double rho) {
  const double u = s.u();
  return Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{-u * u, 2.0 * u, s.A / rho},
              Vec3{0.0, w.E0 * transport_coeff(s.A, w), 0.0}};
}

/// |M| = R |Lambda| R^-1. The linearly degenerate field has a zero eigenvalue
/// and drops out exactly.
inline Mat3 abs_matrix(const Eigenstructure& e) {
  Mat3 r{};
  for (int k : {0, 2}) {
    const double lam = std::abs(e.lambdas[k]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] += lam * e.R[i][k] * e.Rinv[k][j];
  }
  return r;
}

struct Fluctuations {
  Vec3 D_minus{};  // contribution to the cell left of the interface
  Vec3 D_plus{};   // contribution to the cell right of the interface
  double pp_upwind = 0.0;  // |M|_pp dp: the only part of the pressure row that depends on p
};

inline Fluctuations dot_fluctuations(const ExtState& qL, const ExtState& qR, VesselKind kind,
                                     double rho, const GaussRule& rule = GaussRule(3)) {
  const Vec3 jump = qR.q() - qL.q();
  Fluctuations f;
  if (jump[0] == 0.0 && jump[1] == 0.0 && jump[2] == 0.0) return f;
  Mat3 mean{}, mean_abs{};
  for (int g = 0; g < rule.n; ++g) {
    const ExtState psi = lerp(qL, qR, rule.nodes[g]);
    const WallModel w = psi.wall(kind);
    const CellState s = psi.cell();
    Eigenstructure e;
    try {
      e = eigenstructure(s, w, rho);
    } catch (const Error& err) {
      std::ostringstream os;
      os << "dot_fluctuations: node " << g << " (s=" << rule.nodes[g] << ", A=" << s.A
         << ", Au=" << s.Au << "): " << err.what();
      throw Error(os.str());
    }
    const double u = s.u();
    mean = mean + rule.weights[g] * Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{-u * u, 2.0 * u, s.A / rho},
                                         Vec3{0.0, e.K, 0.0}};
    mean_abs = mean_abs + rule.weights[g] * abs_matrix(e);
  }
  const Vec3 central = mean * jump;
  const Vec3 upwind = mean_abs * jump;
  f.D_minus = 0.5 * (central - upwind);
  f.D_plus = 0.5 * (central + upwind);
  f.pp_upwind = mean_abs[2][2] * jump[2];
  return f;
}

/// Path integral of M along the segment, applied to the jump (D- + D+).
inline Vec3 path_integral(const ExtState& qL, const ExtState& qR, VesselKind kind, double rho,
                          const GaussRule& rule = GaussRule(3)) {
  const Vec3 jump = qR.q() - qL.q();
  Mat3 mean{};
  for (int g = 0; g < rule.n; ++g) {
    const ExtState psi = lerp(qL, qR, rule.nodes[g]);
    mean = mean + rule.weights[g] * quasilinear_matrix(psi.cell(), psi.wall(kind), rho);
  }
  return mean * jump;
}

}  // namespace hemo
