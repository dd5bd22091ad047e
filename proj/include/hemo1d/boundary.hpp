#pragma once
//
// Ghost-cell filling and the physical boundary conditions: prescribed inflow
// at x = 0 (outgoing invariant u - I(A) plus the pressure invariant) and an
// RCR Windkessel at x = L.
//
// Everything here is unit-agnostic: the solver calls it with dimensionless
// states, walls and circuit values (see RcrCircuit::scaled).
//

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"
#include "hemo1d/mesh.hpp"
#include "hemo1d/nondim.hpp"

namespace hemo {

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 100;
};

struct RcrCircuit {
  double R1 = 0.0;    // proximal resistance [Pa s / m^3]
  double R2 = 0.0;    // distal resistance [Pa s / m^3]
  double C = 0.0;     // compliance [m^3 / Pa]
  double p_out = 0.0; // venous pressure [Pa]
  double p_C = 0.0;   // capacitor pressure [Pa]

  void validate() const {
    if (!(R1 > 0.0 && R2 > 0.0 && C > 0.0))
      throw ParameterError("RcrCircuit: R1, R2 and C must be positive");
    if (!std::isfinite(p_out) || !std::isfinite(p_C))
      throw ParameterError("RcrCircuit: pressures must be finite");
  }

  /// Capacitor pressure after dt given the proximal pressure p_star (explicit Euler).
  double advance(double p_star, double dt) const {
    return p_C + dt / (C * R1) * (p_star - p_C) - dt / (C * R2) * (p_C - p_out);
  }

  /// Steady state for constant inflow q: (p*, p_C).
  std::pair<double, double> steady(double q) const {
    return {p_out + q * (R1 + R2), p_out + q * R2};
  }

  /// Same circuit in the units of the given scales.
  RcrCircuit scaled(const CharacteristicScales& s) const {
    const double r = s.pressure() / s.flow();
    return {R1 / r, R2 / r, C * r / s.T, p_out / s.pressure(), p_C / s.pressure()};
  }
  RcrCircuit unscaled(const CharacteristicScales& s) const {
    const double r = s.pressure() / s.flow();
    return {R1 * r, R2 * r, C * s.T / r, p_out * s.pressure(), p_C * s.pressure()};
  }
};

/// Prescribed inflow q(t): tabulated one-period samples (linear interpolation,
/// periodic extension) or a half-sine systole followed by diastolic rest.
class InletWaveform {
 public:
  static InletWaveform half_sine(double q_max, double t_systole, double period) {
    if (!(period > 0.0) || !(t_systole > 0.0) || t_systole > period)
      throw ParameterError("InletWaveform: need 0 < T_s <= T");
    if (!std::isfinite(q_max)) throw ParameterError("InletWaveform: Q_max must be finite");
    InletWaveform w;
    w.q_max_ = q_max;
    w.ts_ = t_systole;
    w.period_ = period;
    return w;
  }

  static InletWaveform constant(double q) {
    InletWaveform w;
    w.q_max_ = q;
    w.period_ = 1.0;
    w.constant_ = true;
    return w;
  }

  /// Samples covering one period [t.front(), t.back()]; q(t.back()) should equal q(t.front()).
  static InletWaveform table(std::vector<double> t, std::vector<double> q) {
    if (t.size() != q.size() || t.size() < 2)
      throw ParameterError("InletWaveform: table needs >= 2 matching (t, q) samples");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i] > t[i - 1])) throw ParameterError("InletWaveform: times must increase");
    for (double v : q)
      if (!std::isfinite(v)) throw ParameterError("InletWaveform: q must be finite");
    InletWaveform w;
    w.period_ = t.back() - t.front();
    w.t_ = std::move(t);
    w.q_ = std::move(q);
    return w;
  }

  /// Whitespace or comma separated "t q" lines; '#' starts a comment.
  static InletWaveform from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("InletWaveform: cannot open " + path);
    std::vector<double> t, q;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double a, b;
      if (!(ls >> a)) continue;
      if (!(ls >> b)) throw ParameterError(path + ":" + std::to_string(lineno) + ": expected 't q'");
      t.push_back(a);
      q.push_back(b);
    }
    return table(std::move(t), std::move(q));
  }

  double period() const { return period_; }

  double operator()(double t) const {
    if (constant_) return q_max_;
    if (t_.empty()) {
      const double s = std::fmod(std::fmod(t, period_) + period_, period_);
      return s < ts_ ? q_max_ * std::sin(std::numbers::pi * s / ts_) : 0.0;
    }
    double s = std::fmod(t - t_.front(), period_);
    if (s < 0.0) s += period_;
    s += t_.front();
    auto it = std::upper_bound(t_.begin(), t_.end(), s);
    if (it == t_.end()) return q_.back();
    const std::size_t i = static_cast<std::size_t>(it - t_.begin());
    const double f = (s - t_[i - 1]) / (t_[i] - t_[i - 1]);
    return q_[i - 1] + f * (q_[i] - q_[i - 1]);
  }

  InletWaveform scaled(const CharacteristicScales& s) const {
    InletWaveform w = *this;
    w.q_max_ /= s.flow();
    w.ts_ /= s.T;
    w.period_ /= s.T;
    for (double& v : w.t_) v /= s.T;
    for (double& v : w.q_) v /= s.flow();
    return w;
  }

 private:
  InletWaveform() = default;
  double q_max_ = 0.0, ts_ = 0.0, period_ = 1.0;
  bool constant_ = false;
  std::vector<double> t_, q_;
};

namespace detail {

/// Pressure invariant shift E_inf/W (a^m - a^n).
inline double pressure_shift(double A, const WallModel& w) { return elastic_excess(A, w, w.E_inf); }

inline double pressure_shift_slope(double A, const WallModel& w) {
  return w.E_inf * transport_coeff(A, w);
}

inline double invariant_integral(double A, const WallModel& w, double rho) {
  return characteristic_integral(A, w, w.E0, rho);
}

}  // namespace detail

struct BoundarySolve {
  CellState state;
  double residual = 0.0;
  int iterations = 0;
};

/// Inflow state for prescribed q_in: solves A (u1 - I(A1) + I(A)) = q_in for A,
/// then p = p1 - psi(A1) + psi(A).
inline BoundarySolve inlet_state(double q_in, const CellState& interior, const WallModel& w,
                                 double rho, NewtonOptions opt = {}) {
  if (!(interior.A > 0.0)) throw DomainError("inlet_state: interior area must be positive");
  const double gamma = interior.u() - detail::invariant_integral(interior.A, w, rho);
  const double scale = std::abs(q_in) + interior.A * celerity(interior.A, w, rho);
  auto residual = [&](double A) {
    return A * (gamma + detail::invariant_integral(A, w, rho)) - q_in;
  };
  double A = interior.A;
  double f = residual(A);
  int it = 0;
  while (std::abs(f) > opt.tol * scale) {
    if (++it > opt.max_iter) {
      std::ostringstream os;
      os << "inlet_state: Newton did not converge, residual " << f;
      throw ConvergenceError(os.str());
    }
    const double u = gamma + detail::invariant_integral(A, w, rho);
    const double df = u + celerity(A, w, rho);
    if (!(df != 0.0) || !std::isfinite(df)) throw ConvergenceError("inlet_state: singular Jacobian");
    double step = f / df, next = A - step;
    double fn = 0.0;
    for (int h = 0; h < 60; ++h) {
      if (next > 0.0) {
        fn = residual(next);
        if (std::abs(fn) < std::abs(f) || h > 40) break;
      }
      step *= 0.5;
      next = A - step;
    }
    if (!(next > 0.0)) throw ConvergenceError("inlet_state: iterate left admissible region");
    A = next;
    f = fn;
  }
  const double u = gamma + detail::invariant_integral(A, w, rho);
  const double p = interior.p - detail::pressure_shift(interior.A, w) + detail::pressure_shift(A, w);
  return {{A, A * u, p}, f / scale, it};
}

struct OutletSolve {
  CellState state;
  double p_C = 0.0;  // capacitor pressure after dt
  double residual = 0.0;
  int iterations = 0;
};

/// Windkessel outlet: unknown A* with u* from the incoming invariant, p* from
/// the pressure invariant, p_C advanced over dt and A* u* = (p* - p_C)/R1.
inline OutletSolve outlet_state(const RcrCircuit& rcr, double dt, const CellState& interior,
                                const WallModel& w, double rho, NewtonOptions opt = {}) {
  if (!(interior.A > 0.0)) throw DomainError("outlet_state: interior area must be positive");
  if (dt < 0.0) throw DomainError("outlet_state: dt must be non-negative");
  const double gamma = interior.u() + detail::invariant_integral(interior.A, w, rho);
  const double p_base = interior.p - detail::pressure_shift(interior.A, w);
  const double k = 1.0 - dt / (rcr.C * rcr.R1);
  auto eval = [&](double A, double& u, double& p, double& pc) {
    u = gamma - detail::invariant_integral(A, w, rho);
    p = p_base + detail::pressure_shift(A, w);
    pc = rcr.advance(p, dt);
    return A * u - (p - pc) / rcr.R1;
  };
  const double scale = std::abs(interior.Au) + interior.A * celerity(interior.A, w, rho) +
                       std::abs(interior.p - rcr.p_C) / rcr.R1;
  double A = interior.A, u, p, pc;
  double f = eval(A, u, p, pc);
  int it = 0;
  while (std::abs(f) > opt.tol * scale) {
    if (++it > opt.max_iter) {
      std::ostringstream os;
      os << "outlet_state: Newton did not converge, residual " << f;
      throw ConvergenceError(os.str());
    }
    const double df = u - celerity(A, w, rho) - k * detail::pressure_shift_slope(A, w) / rcr.R1;
    if (!(df != 0.0) || !std::isfinite(df)) throw ConvergenceError("outlet_state: singular Jacobian");
    double step = f / df, next = A - step;
    double un = u, pn = p, pcn = pc, fn = f;
    for (int h = 0; h < 60; ++h) {
      if (next > 0.0) {
        fn = eval(next, un, pn, pcn);
        if (std::abs(fn) < std::abs(f) || h > 40) break;
      }
      step *= 0.5;
      next = A - step;
    }
    if (!(next > 0.0)) throw ConvergenceError("outlet_state: iterate left admissible region");
    A = next;
    u = un;
    p = pn;
    pc = pcn;
    f = fn;
  }
  return {{A, A * u, p}, pc, f / scale, it};
}

enum class BoundaryMode { Periodic, Transmissive, Physical };

/// Physical boundary data: inflow at x = 0 and Windkessel at x = L.
struct PhysicalBoundary {
  InletWaveform inflow = InletWaveform::constant(0.0);
  RcrCircuit rcr;
  NewtonOptions newton;
};

struct BoundarySpec {
  BoundaryMode mode = BoundaryMode::Transmissive;
  std::optional<PhysicalBoundary> physical;
};

/// Fills the state ghosts. For physical boundaries `t` is the stage time and
/// `dt_rcr` the time over which the capacitor is (tentatively) advanced; the
/// circuit itself is not modified.
inline void fill_ghosts(StateField& q, const Grid1D& grid, const WallField& wall, double rho,
                        const BoundarySpec& bc, double t = 0.0, double dt_rcr = 0.0) {
  const int lo = grid.first(), hi = grid.last();
  switch (bc.mode) {
    case BoundaryMode::Periodic:
      for (int g = 1; g <= kGhost; ++g) {
        q.set(lo - g, q.at(hi + 1 - g));
        q.set(hi + g, q.at(lo - 1 + g));
      }
      return;
    case BoundaryMode::Transmissive:
      for (int g = 1; g <= kGhost; ++g) {
        q.set(lo - g, q.at(lo));
        q.set(hi + g, q.at(hi));
      }
      return;
    case BoundaryMode::Physical: {
      if (!bc.physical) throw ParameterError("fill_ghosts: physical mode needs inflow and RCR data");
      const PhysicalBoundary& pb = *bc.physical;
      const CellState in =
          inlet_state(pb.inflow(t), q.at(lo), wall.at(lo), rho, pb.newton).state;
      const CellState out =
          outlet_state(pb.rcr, dt_rcr, q.at(hi), wall.at(hi), rho, pb.newton).state;
      for (int g = 1; g <= kGhost; ++g) {
        q.set(lo - g, in);
        q.set(hi + g, out);
      }
      return;
    }
  }
}

}  // namespace hemo
