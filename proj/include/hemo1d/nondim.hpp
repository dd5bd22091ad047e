#pragma once
//
// Characteristic scales and the dimensionless form of the augmented system.
//
// Starred variables: x* = x/L, t* = t/T, rho* = rho/rho_bar, A* = A/A_bar,
// u* = u/U, p* = p/(rho_bar U^2), E* = E/E_bar, tau* = tau/T with U = L/T and
// E_bar = eta_bar/T. In these variables the pressure equation carries the
// wall Reynolds number Re = rho_bar U L / eta_bar in front of every modulus.
//
// The solver never sees the starred moduli directly: it works with the
// "pressure-scaled" wall returned by solver_wall(), where E -> E*/Re and
// eta -> eta*/Re, so the dimensionless equations keep the physical form.
// h0 is scaled by sqrt(A_bar) so that the Barlow width W stays unchanged.
//

#include <cmath>
#include <numeric>
#include <span>

#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"

namespace hemo {

struct CharacteristicScales {
  double L = 1.0;
  double T = 1.0;
  double rho = 1.0;
  double A = 1.0;
  double eta = 1.0;
  double E = 1.0;
  double U = 1.0;

  /// Builds a consistent set with eta = E T and U = L / T.
  static CharacteristicScales make(double L, double T, double rho, double A, double E) {
    CharacteristicScales s{L, T, rho, A, E * T, E, L / T};
    s.validate();
    return s;
  }

  static CharacteristicScales unit() { return make(1.0, 1.0, 1.0, 1.0, 1.0); }

  void validate() const {
    if (!(L > 0 && T > 0 && rho > 0 && A > 0 && eta > 0 && E > 0 && U > 0))
      throw ParameterError("characteristic scales must be strictly positive");
  }

  double pressure() const { return rho * U * U; }
  double flow() const { return A * U; }
};

/// Reynolds-like number built on the wall viscosity, rho U L / eta.
inline double wall_reynolds(const CharacteristicScales& s) { return s.rho * s.U * s.L / s.eta; }

/// L_bar = domain length, T_bar = 1 s, rho_bar = 1050 kg/m^3, A_bar = mean of
/// the initial area, E_bar = mean over the concatenated E0 and E_inf fields.
inline CharacteristicScales scales_from_initial(double length, std::span<const double> area,
                                                std::span<const double> e0,
                                                std::span<const double> e_inf,
                                                double rho_bar = 1050.0, double t_bar = 1.0) {
  if (area.empty() || e0.empty() || e_inf.empty())
    throw ParameterError("scales_from_initial: empty initial fields");
  const double a_mean = std::accumulate(area.begin(), area.end(), 0.0) / area.size();
  const double e_sum = std::accumulate(e0.begin(), e0.end(), 0.0) +
                       std::accumulate(e_inf.begin(), e_inf.end(), 0.0);
  const double e_mean = e_sum / static_cast<double>(e0.size() + e_inf.size());
  return CharacteristicScales::make(length, t_bar, rho_bar, a_mean, e_mean);
}

inline CellState to_dimensionless(const CellState& q, const CharacteristicScales& s) {
  return {q.A / s.A, q.Au / s.flow(), q.p / s.pressure()};
}

inline CellState from_dimensionless(const CellState& q, const CharacteristicScales& s) {
  return {q.A * s.A, q.Au * s.flow(), q.p * s.pressure()};
}

/// Starred wall parameters (E* = E/E_bar, eta* = eta/eta_bar).
inline WallModel to_dimensionless(const WallModel& w, const CharacteristicScales& s) {
  WallModel r = w;
  r.A0 = w.A0 / s.A;
  r.h0 = w.h0 / std::sqrt(s.A);
  r.E0 = w.E0 / s.E;
  r.E_inf = w.E_inf / s.E;
  r.eta = w.eta / s.eta;
  r.tau_r = w.tau_r / s.T;
  r.p0 = w.p0 / s.pressure();
  return r;
}

inline WallModel from_dimensionless(const WallModel& w, const CharacteristicScales& s) {
  WallModel r = w;
  r.A0 = w.A0 * s.A;
  r.h0 = w.h0 * std::sqrt(s.A);
  r.E0 = w.E0 * s.E;
  r.E_inf = w.E_inf * s.E;
  r.eta = w.eta * s.eta;
  r.tau_r = w.tau_r * s.T;
  r.p0 = w.p0 * s.pressure();
  return r;
}

/// Starred wall with moduli and viscosity divided by Re: the form consumed by
/// the dimensionless solver.
inline WallModel solver_wall(const WallModel& w, const CharacteristicScales& s) {
  WallModel r = to_dimensionless(w, s);
  const double re = wall_reynolds(s);
  r.E0 /= re;
  r.E_inf /= re;
  r.eta /= re;
  return r;
}

inline WallModel physical_wall(const WallModel& solver, const CharacteristicScales& s) {
  WallModel r = solver;
  const double re = wall_reynolds(s);
  r.E0 *= re;
  r.E_inf *= re;
  r.eta *= re;
  return from_dimensionless(r, s);
}

struct Nondim {
  static double length(double x, const CharacteristicScales& s) { return x / s.L; }
  static double time(double t, const CharacteristicScales& s) { return t / s.T; }
  static double density(double rho, const CharacteristicScales& s) { return rho / s.rho; }
  static double pressure(double p, const CharacteristicScales& s) { return p / s.pressure(); }
  static double flow(double q, const CharacteristicScales& s) { return q / s.flow(); }
  static double area(double a, const CharacteristicScales& s) { return a / s.A; }
};

}  // namespace hemo
