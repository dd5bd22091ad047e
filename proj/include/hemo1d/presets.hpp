#pragma once
//
// Built-in scenarios: the five Riemann problems (cases a/b/c), the smooth
// accuracy study (sls/kv/el columns) and the stented thoracic aorta. Each is
// emitted as config text in table units, so committed configs and the
// built-in presets come from one source.
//

#include <array>
#include <sstream>
#include <string>

#include "hemo1d/config.hpp"

namespace hemo {

struct RpData {
  const char* vessel;
  double L, x0, t_end;
  double A0L, A0R, AL, AR, uL, uR, pL, pR, p0L, p0R, EinfL, EinfR;  // mm2, m/s, mmHg, MPa
};

struct RpCaseData {
  double E0L, E0R, etaL, etaR, tau;  // MPa, kPa s, s
};

inline constexpr std::array<RpData, 5> kRpData{{
    {"artery", 0.2, 0.10, 0.100, 627.06, 313.53, 641.38, 312.82, 0.0, 0.0, 80.00, 80.00, 75.0, 85.0, 2.7655, 19.555},
    {"artery", 0.2, 0.05, 0.007, 156.77, 313.53, 250.82, 329.21, 1.0, 0.0, 146.67, 108.78, 30.0, 0.0, 1.3828, 19.555},
    {"vein", 0.2, 0.05, 0.015, 110.00, 130.00, 99.00, 208.00, 0.0, 0.0, 9.97, 46.05, 10.0, 5.0, 0.4604, 5.9153},
    {"artery", 0.2, 0.10, 0.010, 313.53, 313.53, 470.30, 219.47, 0.0, 0.0, 178.99, 8.05, 80.0, 80.0, 1.9555, 1.9555},
    {"vein", 0.5, 0.25, 0.050, 28.274, 29.688, 31.00, 31.00, -0.20, 0.10, 0.9099, 5.0303, 0.50, 0.50, 0.4000, 12.911},
}};

// [rp][case]; RP1 has a single configuration, stored as case a.
inline constexpr std::array<std::array<RpCaseData, 3>, 5> kRpCases{{
    {{{3.4569, 24.444, 8.6423, 61.111, 0.0005}, {}, {}}},
    {{{1.3828, 19.555, 0.0, 0.0, 0.0}, {1.7285, 24.444, 4.3212, 61.111, 0.0005}, {1.7285, 24.444, 86.423, 1222.2, 0.01}}},
    {{{0.4604, 5.9153, 0.0, 0.0, 0.0}, {0.5755, 7.3941, 1.4388, 18.485, 0.0005}, {0.5755, 7.3941, 5.7552, 73.941, 0.002}}},
    {{{1.9555, 1.9555, 0.0, 0.0, 0.0}, {2.4444, 2.4444, 6.1111, 6.1111, 0.0005}, {2.4444, 2.4444, 24.444, 24.444, 0.002}}},
    {{{0.400, 12.911, 0.0, 0.0, 0.0}, {0.500, 16.139, 2.500, 80.693, 0.001}, {0.500, 16.139, 250.00, 8069.3, 0.10}}},
}};

inline constexpr double kRpWallThickness = 0.3;  // mm
inline constexpr int kRpCells = 100;
inline constexpr double kRpWenoEps = 1e-14;

inline void check_rp_id(int id, char cs) {
  if (id < 1 || id > 5) throw ConfigError("Riemann problem id must be 1..5");
  if (cs != 'a' && cs != 'b' && cs != 'c') throw ConfigError("Riemann problem case must be a, b or c");
  if (id == 1 && cs != 'a') throw ConfigError("RP1 has a single configuration (case a)");
}

inline std::string rp_config_text(int id, char cs) {
  check_rp_id(id, cs);
  const RpData& d = kRpData[id - 1];
  const RpCaseData& k = kRpCases[id - 1][cs - 'a'];
  std::ostringstream o;
  o.precision(8);
  o << "# Riemann problem " << id << ", case " << cs << "\n"
    << "[scenario]\nname = rp" << id << cs << "\nkind = tracts\n\n"
    << "[grid]\nL = " << d.L << "\nnx = " << kRpCells << "\n\n"
    << "[fluid]\nrho = 1050\n\n"
    << "[time]\nt_end = " << d.t_end << "\n\n"
    << "[numerics]\nweno_eps = " << kRpWenoEps << "\n\n"
    << "[boundary]\nmode = transmissive\n\n";
  auto side = [&](int n, double x_end, double A0, double A, double u, double p, double p0,
                  double Einf, double E0, double eta) {
    o << "[tract." << n << "]\n";
    if (x_end > 0.0) o << "x_end = " << x_end << "\n";
    o << "kind = " << d.vessel << "\nA0 = " << A0 << "\n";
    // RP1 is blood at rest: the printed areas are rounded, so they are
    // recomputed from the pressure to make the state an exact equilibrium.
    if (id == 1) o << "equilibrate = true\n";
    else o << "A = " << A << "\n";
    o << "u = " << u << "\np = " << p << "\np0 = " << p0 << "\nh0 = " << kRpWallThickness
      << "\nE_inf = " << Einf << "\nE0 = " << E0 << "\neta = " << eta << "\ntau_r = " << k.tau
      << "\n\n";
  };
  side(1, d.x0, d.A0L, d.AL, d.uL, d.pL, d.p0L, d.EinfL, k.E0L, k.etaL);
  side(2, 0.0, d.A0R, d.AR, d.uR, d.pR, d.p0R, d.EinfR, k.E0R, k.etaR);
  o << "[probes]\nnames = L, M, R\nx = " << 0.5 * d.x0 << ", " << d.x0 << ", "
    << 0.5 * (d.x0 + d.L) << "\n\n[output]\ndir = out\n";
  return o.str();
}

inline SimConfig rp_config(int id, char cs) {
  return parse_config(ConfigFile::parse_string(rp_config_text(id, cs), "rp preset"));
}

enum class AccuracyColumn { Sls, Kv, El };

inline AccuracyColumn parse_accuracy_column(const std::string& s) {
  if (s == "sls") return AccuracyColumn::Sls;
  if (s == "kv") return AccuracyColumn::Kv;
  if (s == "el") return AccuracyColumn::El;
  throw ConfigError("closure must be sls, kv or el");
}

inline const char* to_string(AccuracyColumn c) {
  switch (c) {
    case AccuracyColumn::Sls: return "sls";
    case AccuracyColumn::Kv: return "kv";
    case AccuracyColumn::El: return "el";
  }
  return "?";
}

inline std::string accuracy_config_text(AccuracyColumn col, int nx = 45) {
  double tau = 0.1, eta = 5e5, E0 = 1e6;  // Pa s, Pa
  if (col == AccuracyColumn::Kv) {
    tau = 1e-4;
    eta = 5e4;
    E0 = 5e8;
  } else if (col == AccuracyColumn::El) {
    tau = 0.0;
    eta = 0.0;
    E0 = 8e5;
  }
  std::ostringstream o;
  o << "# smooth periodic accuracy study, " << to_string(col) << " column\n"
    << "[scenario]\nname = accuracy_" << to_string(col) << "_" << nx << "\nkind = smooth\n\n"
    << "[grid]\nL = 1\nnx = " << nx << "\n\n[fluid]\nrho = 1050\n\n[time]\nt_end = 0.25\n\n"
    << "[boundary]\nmode = periodic\n\n"
    << "[smooth]\nh0 = 1.5\nA_bar = 5 cm2\na_amp = 1 cm2\nP0_bar = 5 kPa\np_amp = 500 Pa\n"
    << "E0_bar = " << E0 << " Pa\nE_inf_bar = 8e5 Pa\ne_amp = 0.2\neta = " << eta
    << " Pa.s\ntau_r = " << tau << "\nAu = 5e-5\n\n[output]\ndir = out\n";
  return o.str();
}

inline SimConfig accuracy_config(AccuracyColumn col, int nx = 45) {
  return parse_config(ConfigFile::parse_string(accuracy_config_text(col, nx), "accuracy preset"));
}

inline constexpr double kStentPeriod = 0.955;  // s
inline constexpr int kStentCycles = 10;

inline std::string stent_config_text(bool stent = true) {
  std::ostringstream o;
  o.precision(8);
  o << "# thoracic aorta with a stent in the middle third\n"
    << "[scenario]\nname = " << (stent ? "stent" : "stentless") << "\nkind = tracts\n"
    << "stent_tract = 2\n\n"
    << "[grid]\nL = 0.24\nnx = 24\n\n[fluid]\nrho = 1060\n\n"
    << "[time]\nt_end = " << kStentPeriod * kStentCycles << "\ncycle = " << kStentPeriod
    << "\nsnapshots = 200\n\n"
    << "[boundary]\nmode = physical\n\n"
    << "# the measured inflow is not tabulated; a half-sine systole stands in\n"
    << "[inflow]\nshape = half_sine\nq_max = 5e-4\nt_systole = 0.33\nperiod = " << kStentPeriod
    << "\n\n"
    << "[rcr]\nR1 = 14.047 MPa.s/m3\nR2 = 111.67 MPa.s/m3\nC = 14.238 m3/GPa\np_out = 0\n\n";
  auto tract = [&](int n, double x_end, bool stented) {
    const bool s = stented && stent;
    o << "[tract." << n << "]\nx_end = " << x_end << "\nkind = artery\nA0 = 452.39\n"
      << "equilibrate = true\nu = 0\np = 0\np0 = 71\nh0 = 1.2\n"
      << "E_inf = " << (s ? 53.333 : 0.5333) << "\nE0 = " << (s ? 76.190 : 0.7619)
      << "\neta = 50.794\ntau_r = " << (s ? 0.0002 : 0.02) << "\n\n";
  };
  tract(1, 0.08, false);
  tract(2, 0.16, true);
  tract(3, 0.24, false);
  o << "[probes]\nnames = U, M, D\nx = 0.045, 0.125, 0.205\n\n[output]\ndir = out\n";
  return o.str();
}

inline SimConfig stent_config(bool stent = true) {
  return parse_config(ConfigFile::parse_string(stent_config_text(stent), "stent preset"));
}

/// Replaces the stented tract by the parameters of the first tract.
inline SimConfig without_stent(SimConfig c) {
  if (c.stent_tract <= 0) throw ConfigError("configuration has no stent tract");
  TractConfig& t = c.tracts.at(c.stent_tract - 1);
  const double x_end = t.x_end;
  t = c.tracts.front();
  t.x_end = x_end;
  if (c.name.find("stentless") == std::string::npos) c.name += "_nostent";
  return c;
}

}  // namespace hemo
