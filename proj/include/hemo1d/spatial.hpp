#pragma once
//
// Semi-discrete path-conservative finite-volume operator
//
//   dQ_i/dt = -1/dx (D-_{i+1/2} + D+_{i-1/2} + int_cell M(Q) Q_x dx)
//
// built on WENO3 face values. The cell integral uses the quadratic that
// matches both face values and the cell value, sampled at Gauss nodes.
//

#include <cmath>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <vector>

#include "hemo1d/dot.hpp"
#include "hemo1d/error.hpp"
#include "hemo1d/mesh.hpp"
#include "hemo1d/weno.hpp"

namespace hemo {

struct SpatialOptions {
  double weno_eps = kWenoEps;
  int gauss_nodes = 3;
};

/// Reconstructed face states of every cell that borders an interior interface.
struct FaceStates {
  std::vector<ExtState> minus;  // left face of cell j
  std::vector<ExtState> plus;   // right face of cell j
};

/// Time derivative of (A, Au, p) on interior cells. p_self is the share of
/// the pressure rate coming from pressure jumps (upwind dissipation); the
/// remainder p - p_self depends on A and Au only.
struct Residual {
  std::vector<double> A, Au, p, p_self;
  explicit Residual(int n = 0) : A(n, 0.0), Au(n, 0.0), p(n, 0.0), p_self(n, 0.0) {}
};

namespace detail {

inline ExtState ext_at(const StateField& q, const WallField& w, int j) {
  return {q.A[j], q.Au[j], q.p[j], w.A0[j], w.h0[j], w.E0[j], w.E_inf[j], w.p0[j], w.eta[j]};
}

/// Quadratic on xi in [-1/2, 1/2] with given face values and cell value.
struct CellQuadratic {
  double a, b, c;
  CellQuadratic(double left, double mid, double right)
      : a(0.0), b(right - left), c(3.0 * (left + right) - 6.0 * mid) {
    a = mid - c / 12.0;
  }
  double value(double xi) const { return a + xi * (b + xi * c); }
  double slope(double xi) const { return b + 2.0 * c * xi; }
};

template <class F>
ExtState map_components(const ExtState& l, const ExtState& m, const ExtState& r, F&& f) {
  return {f(l.A, m.A, r.A),       f(l.Au, m.Au, r.Au),   f(l.p, m.p, r.p),
          f(l.A0, m.A0, r.A0),    f(l.h0, m.h0, r.h0),   f(l.E0, m.E0, r.E0),
          f(l.E_inf, m.E_inf, r.E_inf), f(l.p0, m.p0, r.p0), f(l.eta, m.eta, r.eta)};
}

}  // namespace detail

/// Component-wise WENO3 reconstruction of state and parameters for storage
/// cells first-1 .. last+1. Ghost cells must be filled.
inline FaceStates reconstruct_field(const Grid1D& grid, const WallField& wall, const StateField& q,
                                    double eps) {
  const int lo = grid.first() - 1, hi = grid.last() + 1;
  for (int j = lo - 1; j <= hi + 1; ++j) {
    if (!std::isfinite(q.A[j]) || !std::isfinite(q.Au[j]) || !std::isfinite(q.p[j])) {
      std::ostringstream os;
      os << "reconstruct_field: state at storage index " << j << " is not set";
      throw Error(os.str());
    }
  }
  FaceStates f;
  f.minus.resize(q.size());
  f.plus.resize(q.size());
  for (int j = lo; j <= hi; ++j) {
    const ExtState l = detail::ext_at(q, wall, j - 1);
    const ExtState m = detail::ext_at(q, wall, j);
    const ExtState r = detail::ext_at(q, wall, j + 1);
    ExtState& lo_face = f.minus[j];
    ExtState& hi_face = f.plus[j];
    auto rec = [&](double ExtState::*field) {
      const FacePair fp = weno3(l.*field, m.*field, r.*field, eps);
      lo_face.*field = fp.minus;
      hi_face.*field = fp.plus;
    };
    for (auto field : {&ExtState::A, &ExtState::Au, &ExtState::p, &ExtState::A0, &ExtState::h0,
                       &ExtState::E0, &ExtState::E_inf, &ExtState::p0, &ExtState::eta})
      rec(field);
  }
  return f;
}

/// int over cell of M(Q) Q_x dx, using the face/centre quadratic.
inline Vec3 cell_integral(const ExtState& left, const ExtState& mid, const ExtState& right,
                          VesselKind kind, double rho, const GaussRule& rule) {
  using detail::CellQuadratic;
  const CellQuadratic qa(left.A, mid.A, right.A), qq(left.Au, mid.Au, right.Au),
      qp(left.p, mid.p, right.p);
  if (qa.b == 0.0 && qa.c == 0.0 && qq.b == 0.0 && qq.c == 0.0 && qp.b == 0.0 && qp.c == 0.0)
    return {0.0, 0.0, 0.0};
  const CellQuadratic qA0(left.A0, mid.A0, right.A0), qh0(left.h0, mid.h0, right.h0),
      qE0(left.E0, mid.E0, right.E0);
  Vec3 sum{};
  for (int g = 0; g < rule.n; ++g) {
    const double xi = rule.nodes[g] - 0.5;
    // only A0, h0 and E0 among the parameters enter M
    WallModel w{qA0.value(xi), qh0.value(xi), qE0.value(xi), 0.0, 0.0, 0.0, 0.0, kind};
    const CellState s{qa.value(xi), qq.value(xi), qp.value(xi)};
    const Vec3 dq{qa.slope(xi), qq.slope(xi), qp.slope(xi)};
    sum = sum + rule.weights[g] * (quasilinear_matrix(s, w, rho) * dq);
  }
  return sum;
}

/// Evaluates dQ/dt on interior cells. `q` must have its ghosts filled.
class SpatialOperator {
 public:
  SpatialOperator(const Grid1D& grid, std::shared_ptr<const WallField> wall, double rho,
                  SpatialOptions opts = {})
      : grid_(grid), wall_(std::move(wall)), rho_(rho), opts_(opts), rule_(opts.gauss_nodes) {}

  const Grid1D& grid() const { return grid_; }
  const WallField& wall() const { return *wall_; }
  double rho() const { return rho_; }
  const SpatialOptions& options() const { return opts_; }
  const GaussRule& rule() const { return rule_; }

  void evaluate(const StateField& q, Residual& out) const {
    const FaceStates f = reconstruct_field(grid_, *wall_, q, opts_.weno_eps);
    const int lo = grid_.first(), hi = grid_.last();
    const VesselKind kind = wall_->kind;
    out = Residual(q.size());
    std::vector<Vec3> acc(q.size(), Vec3{0.0, 0.0, 0.0});
    std::vector<double> self(q.size(), 0.0);
    // interfaces j-1/2 between storage cells j-1 and j, for j = lo..hi+1
    for (int j = lo; j <= hi + 1; ++j) {
      const Fluctuations d = dot_fluctuations(f.plus[j - 1], f.minus[j], kind, rho_, rule_);
      if (j - 1 >= lo) {
        acc[j - 1] = acc[j - 1] + d.D_minus;
        self[j - 1] -= 0.5 * d.pp_upwind;
      }
      if (j <= hi) {
        acc[j] = acc[j] + d.D_plus;
        self[j] += 0.5 * d.pp_upwind;
      }
    }
    const double inv_dx = 1.0 / grid_.dx();
    for (int j = lo; j <= hi; ++j) {
      const Vec3 inner =
          cell_integral(f.minus[j], detail::ext_at(q, *wall_, j), f.plus[j], kind, rho_, rule_);
      const Vec3 total = acc[j] + inner;
      out.A[j] = -inv_dx * total[0];
      out.Au[j] = -inv_dx * total[1];
      out.p[j] = -inv_dx * total[2];
      out.p_self[j] = -inv_dx * self[j];
    }
  }

  /// Central (non-upwinded) discretisation of kappa G(A) d(Au)/dx with
  /// kappa = E0 (use_eta = false) or eta (use_eta = true).
  std::vector<double> transport_term(const StateField& q, bool use_eta) const {
    const FaceStates f = reconstruct_field(grid_, *wall_, q, opts_.weno_eps);
    const int lo = grid_.first(), hi = grid_.last();
    const VesselKind kind = wall_->kind;
    auto kappa_g = [&](const ExtState& s) {
      const WallModel w = s.wall(kind);
      return (use_eta ? s.eta : s.E0) * transport_coeff(s.A, w);
    };
    std::vector<double> jumps(q.size(), 0.0);
    for (int j = lo; j <= hi + 1; ++j) {
      const ExtState& l = f.plus[j - 1];
      const ExtState& r = f.minus[j];
      const double dAu = r.Au - l.Au;
      if (dAu == 0.0) continue;
      double mean = 0.0;
      for (int g = 0; g < rule_.n; ++g) mean += rule_.weights[g] * kappa_g(lerp(l, r, rule_.nodes[g]));
      jumps[j] = mean * dAu;
    }
    std::vector<double> out(q.size(), 0.0);
    const double inv_dx = 1.0 / grid_.dx();
    for (int j = lo; j <= hi; ++j) {
      const ExtState& l = f.minus[j];
      const ExtState m = detail::ext_at(q, *wall_, j);
      const ExtState& r = f.plus[j];
      const detail::CellQuadratic qq(l.Au, m.Au, r.Au);
      double inner = 0.0;
      if (qq.b != 0.0 || qq.c != 0.0) {
        for (int g = 0; g < rule_.n; ++g) {
          const double xi = rule_.nodes[g] - 0.5;
          const ExtState s = detail::map_components(l, m, r, [xi](double a, double b, double c) {
            return detail::CellQuadratic(a, b, c).value(xi);
          });
          inner += rule_.weights[g] * kappa_g(s) * qq.slope(xi);
        }
      }
      out[j] = inv_dx * (0.5 * jumps[j] + 0.5 * jumps[j + 1] + inner);
    }
    return out;
  }

 private:
  Grid1D grid_;
  std::shared_ptr<const WallField> wall_;
  double rho_;
  SpatialOptions opts_;
  GaussRule rule_;
};

}  // namespace hemo
