#pragma once
//
// Exact solution of the elastic Riemann problem with a parameter jump at x0.
//
// The elastic system (p = F(A), modulus E_inf) is conservative for fixed
// wall parameters, with momentum flux Au^2/A + K(A), K(A) = int A F'(A)/rho dA.
// The solution consists of a left wave (shock or rarefaction), a stationary
// contact at x0 across which Au and p + rho u^2/2 are continuous, and a
// right wave. Shocks satisfy Rankine-Hugoniot; rarefactions keep the
// appropriate Riemann invariant u +- I(A) constant.
//

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"

namespace hemo {

enum class WaveType { Shock, Rarefaction };

inline const char* to_string(WaveType w) { return w == WaveType::Shock ? "shock" : "rarefaction"; }

struct RpSide {
  double A = 0.0;
  double u = 0.0;
  WallModel wall;
};

namespace detail {

/// K(A) = E/(rho W) A0 (m a^{m+1}/(m+1) - n a^{n+1}/(n+1)).
inline double momentum_potential(double A, const WallModel& w, double rho) {
  const double a = A / w.A0, m = w.m(), n = w.n();
  const double s = m * std::pow(a, m + 1.0) / (m + 1.0) - n * std::pow(a, n + 1.0) / (n + 1.0);
  return w.E_inf * w.A0 / (rho * w.W()) * s;
}

inline double elastic_celerity(double A, const WallModel& w, double rho) {
  return celerity_with(A, w, w.E_inf, rho);
}

inline double elastic_integral(double A, const WallModel& w, double rho) {
  return characteristic_integral(A, w, w.E_inf, rho);
}

/// Velocity behind the wave connecting side s to area A_star. sign = -1 for
/// the left wave, +1 for the right wave.
inline double wave_curve(double A_star, const RpSide& s, double rho, int sign) {
  if (A_star <= s.A) {
    return s.u + sign * (elastic_integral(A_star, s.wall, rho) - elastic_integral(s.A, s.wall, rho));
  }
  const double dk = momentum_potential(A_star, s.wall, rho) - momentum_potential(s.A, s.wall, rho);
  return s.u + sign * std::sqrt(dk * (A_star - s.A) / (A_star * s.A));
}

}  // namespace detail

struct RpOptions {
  double tol = 1e-13;
  int max_iter = 200;
};

class RpSolution {
 public:
  RpSide left, right;
  double rho = 1050.0;
  double x0 = 0.0;
  double A_star_left = 0.0, u_star_left = 0.0;
  double A_star_right = 0.0, u_star_right = 0.0;
  WaveType left_wave = WaveType::Rarefaction, right_wave = WaveType::Rarefaction;
  int iterations = 0;

  double pressure(double A, bool left_side) const {
    return elastic_pressure(A, left_side ? left.wall : right.wall);
  }

  /// Speed of a shock, or (head, tail) of a rarefaction, ordered in x.
  std::array<double, 2> wave_span(bool left_side) const {
    const RpSide& s = left_side ? left : right;
    const double As = left_side ? A_star_left : A_star_right;
    const double us = left_side ? u_star_left : u_star_right;
    const WaveType t = left_side ? left_wave : right_wave;
    if (t == WaveType::Shock) {
      const double sp = (As * us - s.A * s.u) / (As - s.A);
      return {sp, sp};
    }
    const double cs = detail::elastic_celerity(s.A, s.wall, rho);
    const double cst = detail::elastic_celerity(As, s.wall, rho);
    if (left_side) return {s.u - cs, us - cst};
    return {us + cst, s.u + cs};
  }

  /// State (A, Au, p) at position x and time t > 0.
  CellState sample(double x, double t) const {
    if (!(t > 0.0)) throw DomainError("RpSolution::sample: t must be positive");
    const double xi = (x - x0) / t;
    const bool left_side = x <= x0;
    const RpSide& s = left_side ? left : right;
    const double As = left_side ? A_star_left : A_star_right;
    const double us = left_side ? u_star_left : u_star_right;
    const auto span = wave_span(left_side);
    auto make = [&](double A, double u) { return CellState{A, A * u, pressure(A, left_side)}; };
    if (left_side) {
      if (xi < span[0]) return make(s.A, s.u);
      if (xi >= span[1]) return make(As, us);
    } else {
      if (xi > span[1]) return make(s.A, s.u);
      if (xi <= span[0]) return make(As, us);
    }
    // inside a rarefaction fan: u -+ c(A) = xi along the invariant curve
    const int sign = left_side ? -1 : 1;
    auto f = [&](double A) {
      const double u = detail::wave_curve(A, s, rho, sign);
      return u + sign * detail::elastic_celerity(A, s.wall, rho) - xi;
    };
    double lo = std::min(As, s.A), hi = std::max(As, s.A);
    boost::uintmax_t it = 200;
    auto tolf = [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::abs(a); };
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tolf, it);
    const double A = 0.5 * (r.first + r.second);
    return make(A, detail::wave_curve(A, s, rho, sign));
  }
};

namespace detail {

inline std::array<double, 2> rp_residual(double AL, double AR, const RpSide& l, const RpSide& r,
                                         double rho, double q_scale, double p_scale) {
  const double uL = wave_curve(AL, l, rho, -1);
  const double uR = wave_curve(AR, r, rho, +1);
  const double r1 = (AL * uL - AR * uR) / q_scale;
  const double r2 = (elastic_pressure(AL, l.wall) + 0.5 * rho * uL * uL -
                     elastic_pressure(AR, r.wall) - 0.5 * rho * uR * uR) /
                    p_scale;
  return {r1, r2};
}

}  // namespace detail

/// Solves for the star areas on both sides of the contact by damped Newton.
inline RpSolution solve_rp(const RpSide& left, const RpSide& right, double rho, double x0,
                           RpOptions opt = {}) {
  if (left.wall.kind != right.wall.kind)
    throw ParameterError("solve_rp: vessel kind must match on both sides");
  if (!(left.A > 0.0 && right.A > 0.0)) throw DomainError("solve_rp: areas must be positive");
  const double cL = detail::elastic_celerity(left.A, left.wall, rho);
  const double cR = detail::elastic_celerity(right.A, right.wall, rho);
  const double q_scale = std::max(left.A * cL, right.A * cR);
  const double p_scale = rho * std::max(cL * cL, cR * cR);

  std::array<double, 2> x{0.5 * (left.A + right.A), 0.5 * (left.A + right.A)};
  auto res = detail::rp_residual(x[0], x[1], left, right, rho, q_scale, p_scale);
  auto norm = [](const std::array<double, 2>& v) { return std::hypot(v[0], v[1]); };
  int it = 0;
  while (norm(res) > opt.tol) {
    if (++it > opt.max_iter) {
      std::ostringstream os;
      os << "solve_rp: Newton did not converge, residual " << norm(res);
      throw ConvergenceError(os.str());
    }
    double J[2][2];
    for (int c = 0; c < 2; ++c) {
      const double h = 1e-7 * x[c];
      auto xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const auto rp = detail::rp_residual(xp[0], xp[1], left, right, rho, q_scale, p_scale);
      const auto rm = detail::rp_residual(xm[0], xm[1], left, right, rho, q_scale, p_scale);
      J[0][c] = (rp[0] - rm[0]) / (2.0 * h);
      J[1][c] = (rp[1] - rm[1]) / (2.0 * h);
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det))
      throw ConvergenceError("solve_rp: singular Jacobian");
    std::array<double, 2> dx{(J[1][1] * res[0] - J[0][1] * res[1]) / det,
                             (J[0][0] * res[1] - J[1][0] * res[0]) / det};
    double lambda = 1.0;
    std::array<double, 2> next{};
    std::array<double, 2> rn{};
    for (int h = 0; h < 50; ++h) {
      next = {x[0] - lambda * dx[0], x[1] - lambda * dx[1]};
      if (next[0] > 0.0 && next[1] > 0.0) {
        rn = detail::rp_residual(next[0], next[1], left, right, rho, q_scale, p_scale);
        if (norm(rn) < norm(res)) break;
      }
      lambda *= 0.5;
    }
    if (!(next[0] > 0.0 && next[1] > 0.0)) throw ConvergenceError("solve_rp: left admissible region");
    x = next;
    res = rn;
  }

  RpSolution s;
  s.left = left;
  s.right = right;
  s.rho = rho;
  s.x0 = x0;
  s.iterations = it;
  // zero-strength waves: round-off must not turn them into entropy-violating shocks
  if (std::abs(x[0] - left.A) <= 1e-12 * left.A) x[0] = left.A;
  if (std::abs(x[1] - right.A) <= 1e-12 * right.A) x[1] = right.A;
  s.A_star_left = x[0];
  s.A_star_right = x[1];
  s.u_star_left = detail::wave_curve(x[0], left, rho, -1);
  s.u_star_right = detail::wave_curve(x[1], right, rho, +1);
  s.left_wave = x[0] > left.A ? WaveType::Shock : WaveType::Rarefaction;
  s.right_wave = x[1] > right.A ? WaveType::Shock : WaveType::Rarefaction;

  // Lax entropy condition and wave ordering around the contact
  auto lam = [&](double A, double u, const WallModel& w, int sign) {
    return u + sign * detail::elastic_celerity(A, w, rho);
  };
  auto fail = [](const std::string& m) { throw ConvergenceError("solve_rp: " + m); };
  const auto sl = s.wave_span(true), sr = s.wave_span(false);
  if (s.left_wave == WaveType::Shock) {
    const double sp = sl[0];
    if (!(lam(left.A, left.u, left.wall, -1) > sp && sp > lam(x[0], s.u_star_left, left.wall, -1)))
      fail("left shock violates the Lax condition");
  }
  if (s.right_wave == WaveType::Shock) {
    const double sp = sr[0];
    if (!(lam(x[1], s.u_star_right, right.wall, 1) > sp && sp > lam(right.A, right.u, right.wall, 1)))
      fail("right shock violates the Lax condition");
  }
  if (!(sl[1] <= 0.0 && sr[0] >= 0.0)) fail("waves do not separate around the stationary contact");
  return s;
}

}  // namespace hemo
