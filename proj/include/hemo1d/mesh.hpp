#pragma once
//
// Uniform grid, cell fields and initial-condition builders.
//
// Every per-cell array carries kGhost cells on each side; interior cell i
// (0-based) lives at storage index i + kGhost.
//

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"

namespace hemo {

inline constexpr int kGhost = 2;

struct Grid1D {
  double L = 1.0;
  int nx = 0;

  Grid1D() = default;
  Grid1D(double length, int cells) : L(length), nx(cells) {
    if (!(length > 0.0)) throw ParameterError("Grid1D: length must be positive");
    if (cells < 3) throw ParameterError("Grid1D: need at least 3 cells");
  }

  double dx() const { return L / nx; }
  int size() const { return nx + 2 * kGhost; }
  int first() const { return kGhost; }
  int last() const { return kGhost + nx - 1; }
  /// Center of storage cell j (ghosts included).
  double center(int j) const { return (j - kGhost + 0.5) * dx(); }
};

/// Time-independent wall parameters on the grid (ghosts included).
struct WallField {
  VesselKind kind = VesselKind::Artery;
  std::vector<double> A0, h0, E0, E_inf, eta, tau_r, p0;

  explicit WallField(int n = 0, VesselKind k = VesselKind::Artery)
      : kind(k), A0(n), h0(n), E0(n), E_inf(n), eta(n), tau_r(n), p0(n) {}

  int size() const { return static_cast<int>(A0.size()); }

  WallModel at(int j) const {
    return {A0[j], h0[j], E0[j], E_inf[j], eta[j], tau_r[j], p0[j], kind};
  }

  void set(int j, const WallModel& w) {
    A0[j] = w.A0;
    h0[j] = w.h0;
    E0[j] = w.E0;
    E_inf[j] = w.E_inf;
    eta[j] = w.eta;
    tau_r[j] = w.tau_r;
    p0[j] = w.p0;
  }
};

/// Evolved unknowns (A, Au, p) on the grid (ghosts included).
struct StateField {
  std::vector<double> A, Au, p;

  explicit StateField(int n = 0)
      : A(n, kUnset), Au(n, kUnset), p(n, kUnset) {}
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  int size() const { return static_cast<int>(A.size()); }
  CellState at(int j) const { return {A[j], Au[j], p[j]}; }
  void set(int j, const CellState& s) {
    A[j] = s.A;
    Au[j] = s.Au;
    p[j] = s.p;
  }
};

/// Grid, state and read-only wall parameters of one simulation.
struct FieldSet {
  Grid1D grid;
  double rho = 1050.0;
  std::shared_ptr<const WallField> wall;
  StateField q;

  const WallField& params() const { return *wall; }
  WallModel wall_at(int j) const { return wall->at(j); }
};

/// Copies interior parameters into ghosts: wrap-around when periodic,
/// otherwise constant extrapolation of the edge cells.
inline void fill_parameter_ghosts(WallField& w, int nx, bool periodic) {
  const int n = nx + 2 * kGhost;
  for (int g = 0; g < kGhost; ++g) {
    const int left = g, right = n - 1 - g;
    const int src_left = periodic ? nx + g : kGhost;
    const int src_right = periodic ? 2 * kGhost - 1 - g : n - 1 - kGhost;
    w.set(left, w.at(src_left));
    w.set(right, w.at(src_right));
  }
}

struct SideData {
  CellState state;
  WallModel wall;
};

/// Piecewise-constant data: cells with center <= x0 take the left values.
inline FieldSet init_from_piecewise(const SideData& left, const SideData& right, double x0,
                                    const Grid1D& grid, double rho, bool periodic = false) {
  if (!(x0 > 0.0 && x0 < grid.L)) throw ParameterError("init_from_piecewise: x0 outside domain");
  if (left.wall.kind != right.wall.kind)
    throw ParameterError("init_from_piecewise: vessel kind must match on both sides");
  auto wall = std::make_shared<WallField>(grid.size(), left.wall.kind);
  FieldSet f{grid, rho, nullptr, StateField(grid.size())};
  for (int j = grid.first(); j <= grid.last(); ++j) {
    const SideData& side = grid.center(j) <= x0 ? left : right;
    wall->set(j, side.wall);
    f.q.set(j, side.state);
  }
  fill_parameter_ghosts(*wall, grid.nx, periodic);
  f.wall = std::move(wall);
  return f;
}

/// Sinusoidal parameter profiles of the smooth accuracy study.
struct SmoothConfig {
  double L = 1.0;
  double h0 = 1.5e-3;
  double A_bar = 5e-4;
  double a_amp = 1e-4;
  double P0_bar = 5e3;
  double p_amp = 500.0;
  double E0_bar = 1e6;
  double E_inf_bar = 8e5;
  double e_amp = 2e5;
  double eta = 5e5;
  double tau_r = 0.1;
  double Au = 5e-5;
  double rho = 1050.0;
  bool cell_average = false;  // average profiles with 3-point Gauss instead of point sampling
};

inline FieldSet init_smooth_periodic(const SmoothConfig& c, int nx) {
  Grid1D grid(c.L, nx);
  auto wall = std::make_shared<WallField>(grid.size(), VesselKind::Artery);
  FieldSet f{grid, c.rho, nullptr, StateField(grid.size())};
  auto profile = [&](double x) {
    const double s = std::sin(2.0 * std::numbers::pi * x / c.L);
    WallModel w{c.A_bar + c.a_amp * s, c.h0, c.E0_bar + c.e_amp * s,
                c.E_inf_bar + c.e_amp * s, c.eta, c.tau_r, c.P0_bar + c.p_amp * s,
                VesselKind::Artery};
    return w;
  };
  const double dx = grid.dx();
  for (int j = grid.first(); j <= grid.last(); ++j) {
    const double xc = grid.center(j);
    WallModel w = profile(xc);
    if (c.cell_average) {
      static constexpr double kNode = 0.7745966692414834;  // sqrt(3/5)
      static constexpr double kWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      const double xs[3] = {xc - 0.5 * dx * kNode, xc, xc + 0.5 * dx * kNode};
      WallModel avg = w;
      avg.A0 = avg.E0 = avg.E_inf = avg.p0 = 0.0;
      for (int g = 0; g < 3; ++g) {
        const WallModel wg = profile(xs[g]);
        avg.A0 += kWeights[g] * wg.A0;
        avg.E0 += kWeights[g] * wg.E0;
        avg.E_inf += kWeights[g] * wg.E_inf;
        avg.p0 += kWeights[g] * wg.p0;
      }
      w = avg;
    }
    wall->set(j, w);
    // A = A0 so the elastic law gives p = p0.
    f.q.set(j, {w.A0, c.Au, elastic_pressure(w.A0, w)});
  }
  fill_parameter_ghosts(*wall, nx, true);
  f.wall = std::move(wall);
  return f;
}

/// Builds a field from per-cell callables (used by tests and custom setups).
inline FieldSet init_from_functions(const Grid1D& grid, double rho, VesselKind kind,
                                    const std::function<WallModel(double)>& wall_of_x,
                                    const std::function<CellState(double)>& state_of_x,
                                    bool periodic) {
  auto wall = std::make_shared<WallField>(grid.size(), kind);
  FieldSet f{grid, rho, nullptr, StateField(grid.size())};
  for (int j = grid.first(); j <= grid.last(); ++j) {
    WallModel w = wall_of_x(grid.center(j));
    w.kind = kind;
    wall->set(j, w);
    f.q.set(j, state_of_x(grid.center(j)));
  }
  fill_parameter_ghosts(*wall, grid.nx, periodic);
  f.wall = std::move(wall);
  return f;
}

}  // namespace hemo
