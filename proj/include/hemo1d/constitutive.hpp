#pragma once
//
// Tube laws for the augmented one-dimensional blood-flow model.
//
// The wall is a standard linear solid (SLS): an instantaneous spring E0 in
// series with a Kelvin-Voigt unit. Pressure obeys
//
//   dp/dt + E0 G(A) d(Au)/dx = -(p - F(A)) / tau_r
//
// with G(A) = (m a^m - n a^n) / (W A) and F(A) = p0 + E_inf/W (a^m - a^n),
// a = A/A0. The elastic, Kelvin-Voigt, Maxwell and first-order perturbed
// closures all follow from this law in the appropriate limits.
//

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "hemo1d/error.hpp"
#include "hemo1d/linalg.hpp"

namespace hemo {

enum class VesselKind { Artery, Vein };

struct TubeExponents {
  double m;
  double n;
};

constexpr TubeExponents exponents(VesselKind kind) {
  return kind == VesselKind::Artery ? TubeExponents{0.5, 0.0} : TubeExponents{10.0, -1.5};
}

inline double equilibrium_radius(double A0) { return std::sqrt(A0 / std::numbers::pi); }

/// Barlow width W: R0/h0 for arteries, 12 R0^3/h0^3 for veins.
inline double wall_width(double A0, double h0, VesselKind kind) {
  const double ratio = equilibrium_radius(A0) / h0;
  return kind == VesselKind::Artery ? ratio : 12.0 * ratio * ratio * ratio;
}

/// Mechanical description of the vessel wall at one location.
struct WallModel {
  double A0 = 0.0;     // equilibrium area [m^2]
  double h0 = 0.0;     // wall thickness [m]
  double E0 = 0.0;     // instantaneous Young modulus [Pa]
  double E_inf = 0.0;  // asymptotic Young modulus [Pa]
  double eta = 0.0;    // wall viscosity [Pa s]
  double tau_r = 0.0;  // relaxation time [s]
  double p0 = 0.0;     // equilibrium pressure [Pa]
  VesselKind kind = VesselKind::Artery;

  double R0() const { return equilibrium_radius(A0); }
  double W() const { return wall_width(A0, h0, kind); }
  double m() const { return exponents(kind).m; }
  double n() const { return exponents(kind).n; }

  /// Stiffness of the Kelvin-Voigt spring, E0 E_inf / (E0 - E_inf).
  /// Unbounded when E_inf == E0 (purely elastic wall).
  double E1() const {
    if (E_inf >= E0) throw DomainError("E1 is unbounded when E_inf == E0 (elastic limit)");
    return E0 * E_inf / (E0 - E_inf);
  }

  /// Lumped viscous coefficient eta h0 sqrt(pi) / 2 used by Kelvin-Voigt models.
  double viscous_lumped() const { return eta * h0 * std::sqrt(std::numbers::pi) / 2.0; }

  /// Relaxation time implied by (E0, E_inf, eta).
  double implied_tau() const {
    if (E_inf == 0.0) return eta / E0;
    return (E0 - E_inf) * eta / (E0 * E0);
  }

  /// Relative mismatch between tau_r and implied_tau(); zero when either
  /// tau_r or eta vanishes (limit closures carry no consistency constraint).
  double sls_mismatch() const {
    if (tau_r <= 0.0 || eta <= 0.0) return 0.0;
    return std::abs(tau_r - implied_tau()) / tau_r;
  }

  /// Throws ParameterError describing the first violated invariant.
  void validate(double sls_rel_tol = 1e-6) const {
    auto fail = [this](const std::string& why) {
      std::ostringstream os;
      os << "invalid wall model (" << why << "): A0=" << A0 << " h0=" << h0 << " E0=" << E0
         << " E_inf=" << E_inf << " eta=" << eta << " tau_r=" << tau_r << " p0=" << p0;
      throw ParameterError(os.str());
    };
    if (!(A0 > 0.0)) fail("A0 must be positive");
    if (!(h0 > 0.0)) fail("h0 must be positive");
    if (!(E0 > 0.0)) fail("E0 must be positive");
    if (!(E_inf >= 0.0 && E_inf <= E0)) fail("need 0 <= E_inf <= E0");
    if (!(eta >= 0.0)) fail("eta must be non-negative");
    if (!(tau_r >= 0.0)) fail("tau_r must be non-negative");
    if (!std::isfinite(p0)) fail("p0 must be finite");
    if (sls_mismatch() > sls_rel_tol) fail("tau_r inconsistent with (E0 - E_inf) eta / E0^2");
  }
};

/// (a^m, a^n) without calling pow: the exponents of both kinds have closed forms.
inline std::pair<double, double> tube_powers(double alpha, VesselKind kind) {
  const double r = std::sqrt(alpha);
  if (kind == VesselKind::Artery) return {r, 1.0};
  const double a2 = alpha * alpha, a4 = a2 * a2;
  return {a4 * a4 * a2, 1.0 / (alpha * r)};
}

inline double strain(double alpha, VesselKind kind) {
  if (!(alpha > 0.0)) throw DomainError("strain: alpha must be positive");
  const auto [am, an] = tube_powers(alpha, kind);
  return am - an;
}

/// m a^m - n a^n, the strain derivative times alpha.
inline double strain_rate_factor(double alpha, VesselKind kind) {
  const auto [m, n] = exponents(kind);
  const auto [am, an] = tube_powers(alpha, kind);
  return m * am - n * an;
}

/// Elastic pressure contribution E/W (a^m - a^n) for an arbitrary modulus E.
inline double elastic_excess(double A, const WallModel& w, double E) {
  return E / w.W() * strain(A / w.A0, w.kind);
}

/// Equilibrium pressure F(A) of the relaxed wall.
inline double elastic_pressure(double A, const WallModel& w) {
  return w.p0 + elastic_excess(A, w, w.E_inf);
}

/// Area with F(A) = p. Closed form for arteries; bracketed root search for
/// veins, where the strain is monotone in alpha.
inline double inverse_elastic_pressure(double p, const WallModel& w) {
  const double target = (p - w.p0) * w.W() / w.E_inf;
  if (w.kind == VesselKind::Artery) {
    const double r = 1.0 + target;
    if (!(r > 0.0)) throw DomainError("inverse_elastic_pressure: pressure below collapse limit");
    return w.A0 * r * r;
  }
  auto f = [&](double a) { return strain(a, w.kind) - target; };
  double lo = 1.0, hi = 1.0;
  while (f(lo) > 0.0) lo *= 0.5;
  while (f(hi) < 0.0) hi *= 2.0;
  boost::uintmax_t it = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::abs(a); };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
  return w.A0 * 0.5 * (r.first + r.second);
}

/// G(A) = (m a^m - n a^n) / (W A).
inline double transport_coeff(double A, const WallModel& w) {
  if (!(A > 0.0)) throw DomainError("transport_coeff: A must be positive");
  return strain_rate_factor(A / w.A0, w.kind) / (w.W() * A);
}

/// Wave speed sqrt(A E G(A) / rho) for the modulus E.
inline double celerity_with(double A, const WallModel& w, double E, double rho) {
  const double c2 = A * E * transport_coeff(A, w) / rho;
  if (!(c2 > 0.0)) throw Error("celerity: non-positive radicand");
  return std::sqrt(c2);
}

/// Frozen (instantaneous) wave speed of the augmented system.
inline double celerity(double A, const WallModel& w, double rho) {
  return celerity_with(A, w, w.E0, rho);
}

/// Antiderivative of c(A)/A for modulus E. Arteries: 4 c(A). Veins: composite
/// Gauss-Legendre quadrature from A0 to A, refined until converged to 1e-12.
inline double characteristic_integral(double A, const WallModel& w, double E, double rho) {
  if (!(A > 0.0)) throw DomainError("characteristic_integral: A must be positive");
  if (w.kind == VesselKind::Artery) return 4.0 * celerity_with(A, w, E, rho);
  if (A == w.A0) return 0.0;
  using boost::math::quadrature::gauss;
  auto integrand = [&](double a) { return celerity_with(a, w, E, rho) / a; };
  // composite 30-point Gauss-Legendre, panels doubled until two passes agree
  auto composite = [&](int panels) {
    const double h = (A - w.A0) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k)
      sum += gauss<double, 30>::integrate(integrand, w.A0 + k * h, w.A0 + (k + 1) * h);
    return sum;
  };
  double prev = composite(1);
  for (int panels = 2; panels <= 256; panels *= 2) {
    const double val = composite(panels);
    if (std::abs(val - prev) <= 1e-12 * std::max(1.0, std::abs(val))) return val;
    prev = val;
  }
  std::ostringstream os;
  os << "characteristic_integral: quadrature did not settle for A=" << A << " A0=" << w.A0;
  throw ConvergenceError(os.str());
}

/// Stress relaxation modulus E(t) of the SLS wall.
inline double relaxation_modulus(double t, const WallModel& w) {
  if (t < 0.0) throw DomainError("relaxation_modulus: t must be non-negative");
  if (w.tau_r <= 0.0) return t == 0.0 ? w.E0 : w.E_inf;
  const double decay = std::exp(-t / w.tau_r);
  return w.E0 * decay + w.E_inf * (1.0 - decay);
}

struct CellState {
  double A = 0.0;
  double Au = 0.0;
  double p = 0.0;

  double u() const { return Au / A; }
  double alpha(double A0) const { return A / A0; }
};

/// Relaxation source -(p - F(A)) / tau_r.
inline double sls_source(const CellState& s, const WallModel& w) {
  if (!(w.tau_r > 0.0)) throw DomainError("sls_source: tau_r must be positive");
  return -(s.p - elastic_pressure(s.A, w)) / w.tau_r;
}

/// Kelvin-Voigt closure F(A) - eta G(A) d(Au)/dx.
inline double kv_pressure(double A, double dAu_dx, const WallModel& w) {
  return elastic_pressure(A, w) - w.eta * transport_coeff(A, w) * dAu_dx;
}

/// First-order perturbation of the elastic equilibrium: the Kelvin-Voigt
/// viscosity is damped by ((E0 - E_inf)/E0)^2.
inline double perturbed_pressure(double A, double dAu_dx, const WallModel& w) {
  if (!(w.E0 > 0.0)) throw DomainError("perturbed_pressure: E0 must be positive");
  const double f = (w.E0 - w.E_inf) / w.E0;
  return elastic_pressure(A, w) - f * f * w.eta * transport_coeff(A, w) * dAu_dx;
}

struct Eigenstructure {
  double K = 0.0;  // E0 G(A), the pressure-row entry of the quasi-linear matrix
  Vec3 lambdas{};
  Mat3 R{};
  Mat3 Rinv{};
};

/// Eigenvalues (u-c, 0, u+c) and closed-form right/left eigenvectors of the
/// quasi-linear matrix in (A, Au, p).
inline Eigenstructure eigenstructure(const CellState& s, const WallModel& w, double rho) {
  const double u = s.u();
  const double K = w.E0 * transport_coeff(s.A, w);
  const double c = std::sqrt(s.A * K / rho);
  const double b = rho * u * u / s.A;
  const double kb = K - b;  // = rho (c^2 - u^2) / A
  if (!(c > 0.0) || std::abs(kb) <= 1e-14 * K) {
    std::ostringstream os;
    os << "eigenstructure: singular eigenvectors (u=" << u << ", c=" << c << ")";
    throw Error(os.str());
  }
  Eigenstructure e;
  e.K = K;
  e.lambdas = {u - c, 0.0, u + c};
  e.R = Mat3{Vec3{1.0, 1.0, 1.0}, Vec3{u - c, 0.0, u + c}, Vec3{K, b, K}};
  const double twoc = 2.0 * c;
  e.Rinv = Mat3{Vec3{-b * (c + u) / (twoc * kb), -1.0 / twoc, (c + u) / (twoc * kb)},
                Vec3{K / kb, 0.0, -1.0 / kb},
                Vec3{b * (u - c) / (twoc * kb), 1.0 / twoc, (c - u) / (twoc * kb)}};
  return e;
}

struct RiemannInvariants {
  double gamma1;     // u - int c/A dA
  double gamma2;     // u + int c/A dA
  double gamma3;     // p - E0/W (a^m - a^n)
  double gamma1_ld;  // Au
  double gamma2_ld;  // p + rho u^2 / 2
};

inline RiemannInvariants riemann_invariants(const CellState& s, const WallModel& w, double rho) {
  const double u = s.u();
  const double I = characteristic_integral(s.A, w, w.E0, rho);
  return {u - I, u + I, s.p - elastic_excess(s.A, w, w.E0), s.Au, s.p + 0.5 * rho * u * u};
}

enum class Regime { SLS, ElasticLimit, DiffusiveLimit, Maxwell };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::SLS: return "SLS";
    case Regime::ElasticLimit: return "ElasticLimit";
    case Regime::DiffusiveLimit: return "DiffusiveLimit";
    case Regime::Maxwell: return "Maxwell";
  }
  return "?";
}

struct RegimeThresholds {
  double tau_limit = 1e-6;        // [s]
  double eta_floor = 1e-2;        // [Pa s]
  double stiffness_ratio = 1e-2;  // E_inf/E0 below which eta ~ tau_r E0
};

inline Regime classify_regime(const WallModel& w, const RegimeThresholds& th = {}) {
  const bool fast = w.tau_r < th.tau_limit;
  const bool viscous = w.eta >= th.eta_floor;
  if (fast && !viscous) return Regime::ElasticLimit;
  if (w.E_inf == 0.0 && !fast) return Regime::Maxwell;
  if (viscous && (fast || w.E_inf / w.E0 < th.stiffness_ratio)) return Regime::DiffusiveLimit;
  return Regime::SLS;
}

}  // namespace hemo
