#pragma once
//
// IMEX Runge-Kutta time stepping of the augmented system.
//
// A and Au are advanced explicitly. The pressure row carries the stiff
// relaxation -(p - F(A))/tau_r and is solved stage by stage in closed form:
// with T the pressure transport evaluated on the stage (A, Au),
//
//   p^(k) = [P + dt a_kk T + (dt a_kk / tau) F(A^(k))] / (1 + dt a_kk / tau),
//
// where P collects p^n and the earlier stage rates. The one piece of the
// pressure row that depends on p itself -- the upwind dissipation of pressure
// jumps -- is non-stiff and goes with the explicit weights instead.
//
// Cells with tau_r = 0 follow the elastic law p = F(A) at every stage.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "hemo1d/boundary.hpp"
#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"
#include "hemo1d/mesh.hpp"
#include "hemo1d/spatial.hpp"
#include "hemo1d/tableau.hpp"

namespace hemo {

/// Hyperbolic: dt = CFL dx / max|u +- c|. LessRestrictive: the larger of that
/// and nu dx^2. The second only pays off when the parabolic bound exceeds the
/// acoustic one, which is exactly where the explicit upwind dissipation of the
/// frozen waves (rate ~ c/dx) stops being stable; it is kept for experiments.
enum class DtRule { Hyperbolic, LessRestrictive };

struct StepControls {
  double cfl = 0.9;
  double nu = 0.5;
  DtRule rule = DtRule::Hyperbolic;
  double dt_min = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();

  void validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ParameterError("StepControls: need 0 < CFL <= 1");
    if (!(nu > 0.0)) throw ParameterError("StepControls: nu must be positive");
    if (!(dt_min >= 0.0 && dt_max > dt_min)) throw ParameterError("StepControls: bad dt bounds");
  }
};

/// max |u +- c| over interior cells (frozen celerity).
inline double max_wave_speed(const FieldSet& f) {
  double smax = 0.0;
  for (int j = f.grid.first(); j <= f.grid.last(); ++j) {
    const CellState s = f.q.at(j);
    const double u = s.u();
    const double c = celerity(s.A, f.wall_at(j), f.rho);
    const double v = std::abs(u) + c;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "max_wave_speed: non-finite wave speed at cell " << j - f.grid.first();
      throw Error(os.str());
    }
    smax = std::max(smax, v);
  }
  return smax;
}

/// Step from the configured rule, clamped to [dt_min, dt_max] and shortened so
/// that t + dt does not overshoot t_end.
inline double compute_dt(const FieldSet& f, const StepControls& ctl, double t = 0.0,
                         double t_end = std::numeric_limits<double>::infinity()) {
  const double dx = f.grid.dx();
  const double smax = max_wave_speed(f);
  const double hyp = smax > 0.0 ? ctl.cfl * dx / smax : std::numeric_limits<double>::infinity();
  double dt = ctl.rule == DtRule::Hyperbolic ? hyp : std::max(hyp, ctl.nu * dx * dx);
  if (!std::isfinite(dt)) throw Error("compute_dt: state at rest with zero wave speed");
  dt = std::clamp(dt, ctl.dt_min, ctl.dt_max);
  const double left = t_end - t;
  if (dt >= left || left - dt < 1e-12 * std::max(1.0, std::abs(t_end))) dt = left;
  if (!(dt > 0.0)) throw Error("compute_dt: no time left or non-positive step");
  return dt;
}

namespace detail {

inline void check_positive(const StateField& q, const Grid1D& g, int stage) {
  for (int j = g.first(); j <= g.last(); ++j) {
    if (!(q.A[j] > 0.0)) {
      std::ostringstream os;
      os << "non-positive area " << q.A[j] << " at cell " << j - g.first() << ", stage " << stage;
      throw PositivityError(os.str(), j - g.first(), stage);
    }
  }
}

inline double stage_dt_rcr(const ImexTableau& tab, int k, double dt) { return tab.ct[k] * dt; }

/// Commits the capacitor pressure after a completed step of size dt.
inline void commit_rcr(const FieldSet& f, BoundarySpec& bc, double dt) {
  if (bc.mode != BoundaryMode::Physical || !bc.physical) return;
  const int hi = f.grid.last();
  PhysicalBoundary& pb = *bc.physical;
  pb.rcr.p_C = outlet_state(pb.rcr, dt, f.q.at(hi), f.wall_at(hi), f.rho, pb.newton).p_C;
}

/// Explicit stage values of A and Au.
inline void explicit_stage(const StateField& qn, const std::vector<Residual>& L,
                           const ImexTableau& tab, int k, double dt, const Grid1D& g,
                           StateField& out) {
  for (int j = g.first(); j <= g.last(); ++j) {
    double a = qn.A[j], au = qn.Au[j];
    for (int l = 0; l < k; ++l) {
      const double w = tab.At[k][l];
      if (w == 0.0) continue;
      a += dt * w * L[l].A[j];
      au += dt * w * L[l].Au[j];
    }
    out.A[j] = a;
    out.Au[j] = au;
  }
}

}  // namespace detail

/// One IMEX step of size dt starting at time t. Updates f.q and, for
/// physical boundaries, the capacitor pressure in bc.
inline void imex_step(FieldSet& f, double t, double dt, BoundarySpec& bc,
                      const SpatialOperator& op,
                      const ImexTableau& tab = ImexTableau::bpr343()) {
  const Grid1D& g = f.grid;
  const WallField& w = f.params();
  const int n = g.size(), s = tab.s;
  const StateField qn = f.q;
  std::vector<Residual> L(s, Residual(n));
  // implicit-part rate of p at each stage: transport by (A, Au) plus relaxation
  std::vector<std::vector<double>> K(s, std::vector<double>(n, 0.0));
  StateField qk(n);
  Residual flow(n);

  for (int k = 0; k < s; ++k) {
    const double tk = t + tab.ct[k] * dt;
    const double dtr = detail::stage_dt_rcr(tab, k, dt);
    detail::explicit_stage(qn, L, tab, k, dt, g, qk);
    detail::check_positive(qk, g, k + 1);

    if (k == 0) {
      for (int j = g.first(); j <= g.last(); ++j)
        qk.p[j] = w.tau_r[j] > 0.0 ? qn.p[j] : elastic_pressure(qk.A[j], w.at(j));
    } else {
      // The p-independent part of the pressure rate needs only A and Au; the
      // previous stage pressure just keeps the evaluation well defined.
      fill_ghosts(qk, g, w, f.rho, bc, tk, dtr);
      op.evaluate(qk, flow);
      for (int j = g.first(); j <= g.last(); ++j) {
        const double F = elastic_pressure(qk.A[j], w.at(j));
        const double tau = w.tau_r[j];
        if (!(tau > 0.0)) {
          qk.p[j] = F;
          continue;
        }
        const double T = flow.p[j] - flow.p_self[j];
        double P = qn.p[j];
        for (int l = 0; l < k; ++l)
          P += dt * (tab.At[k][l] * L[l].p_self[j] + tab.Ai[k][l] * K[l][j]);
        const double d = dt * tab.Ai[k][k];
        if (d == 0.0) {
          qk.p[j] = P;
          K[k][j] = T - (P - F) / tau;
          continue;
        }
        const double r = d / tau;
        qk.p[j] = (P + d * T + r * F) / (1.0 + r);
        K[k][j] = (qk.p[j] - P) / d;
      }
    }
    if (k == s - 1) break;
    fill_ghosts(qk, g, w, f.rho, bc, tk, dtr);
    op.evaluate(qk, L[k]);
    if (k == 0) {
      for (int j = g.first(); j <= g.last(); ++j) {
        const double tau = w.tau_r[j];
        if (tau > 0.0)
          K[0][j] = L[0].p[j] - L[0].p_self[j] -
                    (qk.p[j] - elastic_pressure(qk.A[j], w.at(j))) / tau;
      }
    }
  }
  f.q = qk;
  fill_ghosts(f.q, g, w, f.rho, bc, t + dt, dt);
  detail::commit_rcr(f, bc, dt);
}

/// Explicit RK update of (A, Au) with the explicit weights, the pressure
/// given at every stage by closure(stage field with ghosts filled).
inline void explicit_limit_step(FieldSet& f, double t, double dt, BoundarySpec& bc,
                                const SpatialOperator& op, const ImexTableau& tab,
                                const std::function<void(StateField&)>& closure) {
  const Grid1D& g = f.grid;
  const WallField& w = f.params();
  const int n = g.size(), s = tab.s;
  const StateField qn = f.q;
  std::vector<Residual> L(s, Residual(n));
  StateField qk(n);
  for (int k = 0; k < s; ++k) {
    const double tk = t + tab.ct[k] * dt;
    const double dtr = detail::stage_dt_rcr(tab, k, dt);
    detail::explicit_stage(qn, L, tab, k, dt, g, qk);
    detail::check_positive(qk, g, k + 1);
    closure(qk);
    fill_ghosts(qk, g, w, f.rho, bc, tk, dtr);
    if (k < s - 1) op.evaluate(qk, L[k]);
  }
  f.q = qk;
  detail::commit_rcr(f, bc, dt);
}

/// Oracle for the hyperbolic limit: p = F(A) at every stage.
inline void limit_step_elastic(FieldSet& f, double t, double dt, BoundarySpec& bc,
                               const SpatialOperator& op,
                               const ImexTableau& tab = ImexTableau::bpr343()) {
  const WallField& w = f.params();
  const Grid1D& g = f.grid;
  explicit_limit_step(f, t, dt, bc, op, tab, [&](StateField& q) {
    for (int j = g.first(); j <= g.last(); ++j) q.p[j] = elastic_pressure(q.A[j], w.at(j));
  });
}

/// Oracle for the diffusive limit: p = F(A) - eta G(A) (Au)_x at every stage,
/// with the same central path-conservative derivative the scheme uses.
inline void limit_step_diffusive(FieldSet& f, double t, double dt, BoundarySpec& bc,
                                 const SpatialOperator& op,
                                 const ImexTableau& tab = ImexTableau::bpr343()) {
  const WallField& w = f.params();
  const Grid1D& g = f.grid;
  explicit_limit_step(f, t, dt, bc, op, tab, [&](StateField& q) {
    for (int j = g.first(); j <= g.last(); ++j) q.p[j] = elastic_pressure(q.A[j], w.at(j));
    fill_ghosts(q, g, w, f.rho, bc, t, 0.0);
    const std::vector<double> v = op.transport_term(q, true);
    for (int j = g.first(); j <= g.last(); ++j) q.p[j] -= v[j];
  });
}

/// Replaces p by the first-order equilibrium F(A) - tau_r E0 G(A) (Au)_x.
inline void make_well_prepared(FieldSet& f, const BoundarySpec& bc, const SpatialOperator& op) {
  const WallField& w = f.params();
  const Grid1D& g = f.grid;
  for (int j = g.first(); j <= g.last(); ++j) f.q.p[j] = elastic_pressure(f.q.A[j], w.at(j));
  fill_ghosts(f.q, g, w, f.rho, bc);
  const std::vector<double> v = op.transport_term(f.q, false);
  for (int j = g.first(); j <= g.last(); ++j) f.q.p[j] -= w.tau_r[j] * v[j];
  fill_ghosts(f.q, g, w, f.rho, bc);
}

/// Time loop: owns the field, boundary data and operator of one run.
class Simulation {
 public:
  Simulation(FieldSet fields, BoundarySpec bc, SpatialOptions sopt = {}, StepControls ctl = {},
             ImexTableau tab = ImexTableau::bpr343())
      : f_(std::move(fields)),
        bc_(std::move(bc)),
        op_(f_.grid, f_.wall, f_.rho, sopt),
        ctl_(ctl),
        tab_(std::move(tab)) {
    ctl_.validate();
    tab_.validate();
    fill_ghosts(f_.q, f_.grid, f_.params(), f_.rho, bc_, 0.0, 0.0);
  }

  const FieldSet& fields() const { return f_; }
  FieldSet& fields() { return f_; }
  const BoundarySpec& boundary() const { return bc_; }
  BoundarySpec& boundary() { return bc_; }
  const SpatialOperator& spatial() const { return op_; }
  const StepControls& controls() const { return ctl_; }
  double time() const { return t_; }
  long steps() const { return steps_; }

  double step(double t_end = std::numeric_limits<double>::infinity()) {
    const double dt = compute_dt(f_, ctl_, t_, t_end);
    imex_step(f_, t_, dt, bc_, op_, tab_);
    t_ = (t_end - t_ == dt) ? t_end : t_ + dt;
    ++steps_;
    return dt;
  }

  /// Advances to exactly t_end, calling observer(sim) after every step.
  void run_until(double t_end, const std::function<void(const Simulation&)>& observer = {}) {
    while (t_ < t_end) {
      step(t_end);
      if (observer) observer(*this);
    }
  }

 private:
  FieldSet f_;
  BoundarySpec bc_;
  SpatialOperator op_;
  StepControls ctl_;
  ImexTableau tab_;
  double t_ = 0.0;
  long steps_ = 0;
};

}  // namespace hemo
