#pragma once
//
// Scenario configuration: a flat "key = value" text format with [sections].
//
// Every quantity has a fixed default unit, the one clinical data usually come in
// (areas mm^2, pressures mmHg, moduli MPa, viscosities kPa s, lengths m,
// thickness mm). A value may carry an explicit unit instead, e.g.
// "P0_bar = 5 kPa" or "A_bar = 5 cm2". '#' starts a comment.
//
// See configs/README.md for the full schema.
//

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hemo1d/boundary.hpp"
#include "hemo1d/constitutive.hpp"
#include "hemo1d/error.hpp"
#include "hemo1d/imex.hpp"
#include "hemo1d/mesh.hpp"
#include "hemo1d/spatial.hpp"
#include "hemo1d/units.hpp"

namespace hemo {

class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

enum class Dim { None, Length, Thickness, Area, Pressure, Modulus, Viscosity, Time, Velocity,
                 Density, Flow, Resistance, Compliance };

namespace detail {

struct UnitDef {
  const char* name;
  double factor;  // to SI
};

inline const std::vector<UnitDef>& units_of(Dim d) {
  static const std::map<Dim, std::vector<UnitDef>> table = {
      {Dim::None, {}},
      {Dim::Length, {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}}},
      {Dim::Thickness, {{"mm", 1e-3}, {"m", 1.0}, {"cm", 1e-2}}},
      {Dim::Area, {{"mm2", 1e-6}, {"cm2", 1e-4}, {"m2", 1.0}}},
      {Dim::Pressure, {{"mmHg", units::kPaPerMmHg}, {"Pa", 1.0}, {"kPa", 1e3}, {"MPa", 1e6}}},
      {Dim::Modulus, {{"MPa", 1e6}, {"Pa", 1.0}, {"kPa", 1e3}, {"GPa", 1e9}}},
      {Dim::Viscosity, {{"kPa.s", 1e3}, {"Pa.s", 1.0}, {"MPa.s", 1e6}}},
      {Dim::Time, {{"s", 1.0}, {"ms", 1e-3}}},
      {Dim::Velocity, {{"m/s", 1.0}, {"cm/s", 1e-2}}},
      {Dim::Density, {{"kg/m3", 1.0}}},
      {Dim::Flow, {{"m3/s", 1.0}, {"ml/s", 1e-6}, {"l/min", 1e-3 / 60.0}}},
      {Dim::Resistance, {{"Pa.s/m3", 1.0}, {"MPa.s/m3", 1e6}}},
      {Dim::Compliance, {{"m3/Pa", 1.0}, {"m3/GPa", 1e-9}}},
  };
  return table.at(d);
}

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline double parse_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw ConfigError(where + ": not a number: '" + text + "'");
  return v;
}

}  // namespace detail

/// Raw sections and keys of a config file, with use tracking so that
/// misspelled keys are reported instead of silently ignored.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& source = "<config>") {
    ConfigFile c;
    c.source_ = source;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = detail::trim(line);
      if (line.empty()) continue;
      const std::string where = source + ":" + std::to_string(lineno);
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError(where + ": malformed section header");
        section = detail::trim(line.substr(1, line.size() - 2));
        if (section.empty()) throw ConfigError(where + ": empty section name");
        c.sections_[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
      if (section.empty()) throw ConfigError(where + ": key outside of any section");
      const std::string key = detail::trim(line.substr(0, eq));
      const std::string val = detail::trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError(where + ": empty key");
      auto& sec = c.sections_[section];
      if (sec.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
      sec[key] = {val, where};
    }
    return c;
  }

  static ConfigFile parse_string(const std::string& text, const std::string& source = "<string>") {
    std::istringstream in(text);
    return parse(in, source);
  }

  static ConfigFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse(in, path);
  }

  bool has_section(const std::string& s) const { return sections_.count(s) != 0; }
  bool has(const std::string& s, const std::string& k) const {
    auto it = sections_.find(s);
    return it != sections_.end() && it->second.count(k);
  }

  std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sections_)
      if (name.rfind(prefix, 0) == 0) out.push_back(name);
    return out;
  }

  std::string text(const std::string& s, const std::string& k) const {
    return entry(s, k).value;
  }
  std::string text_or(const std::string& s, const std::string& k, const std::string& def) const {
    return has(s, k) ? text(s, k) : def;
  }

  /// Quantity in SI units.
  double number(const std::string& s, const std::string& k, Dim dim = Dim::None) const {
    const Entry& e = entry(s, k);
    std::string v = e.value;
    std::string unit;
    if (auto sp = v.find_first_of(" \t"); sp != std::string::npos) {
      unit = detail::trim(v.substr(sp));
      v = v.substr(0, sp);
    }
    const double x = detail::parse_number(v, e.where);
    const auto& units = detail::units_of(dim);
    if (unit.empty()) return units.empty() ? x : x * units.front().factor;
    for (const auto& u : units)
      if (unit == u.name) return x * u.factor;
    throw ConfigError(e.where + ": unit '" + unit + "' not accepted for key '" + k + "'");
  }
  double number_or(const std::string& s, const std::string& k, double def,
                   Dim dim = Dim::None) const {
    return has(s, k) ? number(s, k, dim) : def;
  }

  int integer(const std::string& s, const std::string& k) const {
    const Entry& e = entry(s, k);
    int v = 0;
    auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || ptr != e.value.data() + e.value.size())
      throw ConfigError(e.where + ": '" + k + "' must be an integer");
    return v;
  }
  int integer_or(const std::string& s, const std::string& k, int def) const {
    return has(s, k) ? integer(s, k) : def;
  }

  bool boolean_or(const std::string& s, const std::string& k, bool def) const {
    if (!has(s, k)) return def;
    const Entry& e = entry(s, k);
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    throw ConfigError(e.where + ": '" + k + "' must be true or false");
  }

  std::vector<double> list(const std::string& s, const std::string& k, Dim dim) const {
    const Entry& e = entry(s, k);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      ConfigFile tmp;
      tmp.sections_["x"]["v"] = {detail::trim(item), e.where};
      out.push_back(tmp.number("x", "v", dim));
    }
    return out;
  }

  std::vector<std::string> words(const std::string& s, const std::string& k) const {
    std::vector<std::string> out;
    std::stringstream ss(text(s, k));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::trim(item));
    return out;
  }

  /// Throws on any key that was never read.
  void check_all_used() const {
    for (const auto& [sname, keys] : sections_)
      for (const auto& [k, e] : keys)
        if (!used_.count(sname + "\x1f" + k))
          throw ConfigError(e.where + ": unknown key '" + k + "' in [" + sname + "]");
  }

  const std::string& source() const { return source_; }

 private:
  struct Entry {
    std::string value;
    std::string where;
  };
  const Entry& entry(const std::string& s, const std::string& k) const {
    auto it = sections_.find(s);
    if (it == sections_.end()) throw ConfigError(source_ + ": missing section [" + s + "]");
    auto kt = it->second.find(k);
    if (kt == it->second.end()) throw ConfigError(source_ + ": missing key '" + k + "' in [" + s + "]");
    used_.insert(s + "\x1f" + k);
    return kt->second;
  }

  std::string source_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
  mutable std::set<std::string> used_;
};

enum class ScenarioKind { Tracts, Smooth };
/// elastic: force E0 = E_inf, eta = 0, tau_r = 0 everywhere.
enum class Closure { Sls, Elastic };

/// One homogeneous stretch of vessel; cells whose centre lies at or before
/// x_end (and after the previous tract) belong to it.
struct TractConfig {
  double x_end = 0.0;
  SideData side;
  bool equilibrate = false;  // recompute A from p through the elastic law
};

struct ProbeConfig {
  std::string name;
  double x = 0.0;
};

struct InflowConfig {
  std::string shape = "half_sine";  // half_sine | table | constant
  double q_max = 0.0, t_systole = 0.0, period = 1.0, q = 0.0;
  std::string file;

  InletWaveform waveform() const {
    if (shape == "half_sine") return InletWaveform::half_sine(q_max, t_systole, period);
    if (shape == "constant") return InletWaveform::constant(q);
    if (shape == "table") return InletWaveform::from_file(file);
    throw ConfigError("inflow shape must be half_sine, table or constant");
  }
  /// Mean flow over one period.
  double mean() const {
    if (shape == "half_sine") return q_max * 2.0 * t_systole / (std::numbers::pi * period);
    if (shape == "constant") return q;
    const InletWaveform w = waveform();
    const int n = 4096;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w((i + 0.5) * w.period() / n);
    return s / n;
  }
};

struct SimConfig {
  std::string name = "run";
  ScenarioKind kind = ScenarioKind::Tracts;
  Closure closure = Closure::Sls;
  double L = 1.0;
  int nx = 100;
  double rho = 1050.0;
  double t_end = 0.0;
  StepControls steps;
  SpatialOptions spatial;
  BoundaryMode boundary = BoundaryMode::Transmissive;
  std::optional<InflowConfig> inflow;
  std::optional<RcrCircuit> rcr;  // p_C may be NaN: initialise from mean inflow
  std::vector<TractConfig> tracts;
  SmoothConfig smooth;
  std::vector<ProbeConfig> probes;
  double cycle = 0.0;        // > 0: record per-cycle probe statistics
  int stent_tract = 0;       // 1-based tract index of the stent, 0 if none
  int snapshots = 0;         // space-time samples over the run (0: none)
  std::string out_dir = "out";

  void validate() const {
    if (!(L > 0.0)) throw ConfigError("grid length must be positive");
    if (nx < 3) throw ConfigError("need at least 3 cells");
    if (!(rho > 0.0)) throw ConfigError("rho must be positive");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    steps.validate();
    if (!(spatial.weno_eps > 0.0)) throw ConfigError("weno_eps must be positive");
    if (kind == ScenarioKind::Tracts) {
      if (tracts.empty()) throw ConfigError("at least one [tract.N] section is required");
      double prev = 0.0;
      for (const auto& t : tracts) {
        if (!(t.x_end > prev)) throw ConfigError("tract x_end values must increase");
        prev = t.x_end;
        t.side.wall.validate(1e-3);
      }
      if (std::abs(prev - L) > 1e-12 * L) throw ConfigError("last tract must end at L");
    }
    if (boundary == BoundaryMode::Physical && (!inflow || !rcr))
      throw ConfigError("physical boundaries need [inflow] and [rcr]");
    if (rcr) {
      RcrCircuit r = *rcr;
      if (std::isnan(r.p_C)) r.p_C = r.p_out;
      r.validate();
    }
    if (stent_tract < 0 || stent_tract > static_cast<int>(tracts.size()))
      throw ConfigError("stent tract index out of range");
    for (const auto& p : probes)
      if (!(p.x >= 0.0 && p.x <= L)) throw ConfigError("probe '" + p.name + "' outside domain");
  }
};

namespace detail {

inline VesselKind parse_kind(const std::string& s) {
  if (s == "artery") return VesselKind::Artery;
  if (s == "vein") return VesselKind::Vein;
  throw ConfigError("vessel kind must be artery or vein, got '" + s + "'");
}

inline const char* kind_name(VesselKind k) { return k == VesselKind::Artery ? "artery" : "vein"; }

inline BoundaryMode parse_mode(const std::string& s) {
  if (s == "periodic") return BoundaryMode::Periodic;
  if (s == "transmissive") return BoundaryMode::Transmissive;
  if (s == "physical") return BoundaryMode::Physical;
  throw ConfigError("boundary mode must be periodic, transmissive or physical");
}

inline const char* mode_name(BoundaryMode m) {
  switch (m) {
    case BoundaryMode::Periodic: return "periodic";
    case BoundaryMode::Transmissive: return "transmissive";
    case BoundaryMode::Physical: return "physical";
  }
  return "?";
}

/// Shortest decimal text that reads back to the same double.
inline std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

inline SimConfig parse_config(const ConfigFile& c) {
  SimConfig s;
  s.name = c.text_or("scenario", "name", s.name);
  const std::string kind = c.text_or("scenario", "kind", "tracts");
  if (kind == "tracts") s.kind = ScenarioKind::Tracts;
  else if (kind == "smooth") s.kind = ScenarioKind::Smooth;
  else throw ConfigError("scenario kind must be tracts or smooth");
  const std::string closure = c.text_or("scenario", "closure", "sls");
  if (closure == "sls") s.closure = Closure::Sls;
  else if (closure == "elastic") s.closure = Closure::Elastic;
  else throw ConfigError("closure must be sls or elastic");
  s.stent_tract = c.integer_or("scenario", "stent_tract", 0);

  s.L = c.number("grid", "L", Dim::Length);
  s.nx = c.integer("grid", "nx");
  s.rho = c.number_or("fluid", "rho", 1050.0, Dim::Density);

  s.t_end = c.number("time", "t_end", Dim::Time);
  s.steps.cfl = c.number_or("time", "cfl", s.steps.cfl);
  s.steps.nu = c.number_or("time", "nu", s.steps.nu);
  s.steps.dt_min = c.number_or("time", "dt_min", s.steps.dt_min, Dim::Time);
  s.steps.dt_max = c.number_or("time", "dt_max", s.steps.dt_max, Dim::Time);
  const std::string rule = c.text_or("time", "dt_rule", "hyperbolic");
  if (rule == "hyperbolic") s.steps.rule = DtRule::Hyperbolic;
  else if (rule == "less_restrictive") s.steps.rule = DtRule::LessRestrictive;
  else throw ConfigError("dt_rule must be hyperbolic or less_restrictive");
  s.cycle = c.number_or("time", "cycle", 0.0, Dim::Time);
  s.snapshots = c.integer_or("time", "snapshots", 0);

  s.spatial.weno_eps = c.number_or("numerics", "weno_eps", s.spatial.weno_eps);
  s.spatial.gauss_nodes = c.integer_or("numerics", "gauss_nodes", s.spatial.gauss_nodes);

  s.boundary = detail::parse_mode(c.text_or("boundary", "mode", "transmissive"));

  if (c.has_section("inflow")) {
    InflowConfig f;
    f.shape = c.text_or("inflow", "shape", f.shape);
    f.q_max = c.number_or("inflow", "q_max", 0.0, Dim::Flow);
    f.t_systole = c.number_or("inflow", "t_systole", 0.0, Dim::Time);
    f.period = c.number_or("inflow", "period", 1.0, Dim::Time);
    f.q = c.number_or("inflow", "q", 0.0, Dim::Flow);
    f.file = c.text_or("inflow", "file", "");
    s.inflow = f;
  }
  if (c.has_section("rcr")) {
    RcrCircuit r;
    r.R1 = c.number("rcr", "R1", Dim::Resistance);
    r.R2 = c.number("rcr", "R2", Dim::Resistance);
    r.C = c.number("rcr", "C", Dim::Compliance);
    r.p_out = c.number_or("rcr", "p_out", 0.0, Dim::Pressure);
    r.p_C = c.number_or("rcr", "p_C", std::numeric_limits<double>::quiet_NaN(), Dim::Pressure);
    s.rcr = r;
  }

  if (s.kind == ScenarioKind::Tracts) {
    auto names = c.sections_with_prefix("tract.");
    std::vector<std::pair<int, std::string>> order;
    for (const auto& n : names) {
      const std::string idx = n.substr(6);
      order.emplace_back(static_cast<int>(detail::parse_number(idx, c.source() + " [" + n + "]")), n);
    }
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::string& sec = order[i].second;
      if (order[i].first != static_cast<int>(i) + 1)
        throw ConfigError("tract sections must be numbered 1, 2, ...");
      TractConfig t;
      t.x_end = c.number_or(sec, "x_end", s.L, Dim::Length);
      WallModel& w = t.side.wall;
      w.kind = detail::parse_kind(c.text_or(sec, "kind", "artery"));
      w.A0 = c.number(sec, "A0", Dim::Area);
      w.h0 = c.number(sec, "h0", Dim::Thickness);
      w.E_inf = c.number(sec, "E_inf", Dim::Modulus);
      w.E0 = c.number_or(sec, "E0", w.E_inf, Dim::Modulus);
      w.eta = c.number_or(sec, "eta", 0.0, Dim::Viscosity);
      w.tau_r = c.number_or(sec, "tau_r", 0.0, Dim::Time);
      w.p0 = c.number(sec, "p0", Dim::Pressure);
      const double u = c.number_or(sec, "u", 0.0, Dim::Velocity);
      const double p = c.number(sec, "p", Dim::Pressure);
      t.equilibrate = c.boolean_or(sec, "equilibrate", false);
      const double A = t.equilibrate && !c.has(sec, "A") ? 0.0 : c.number(sec, "A", Dim::Area);
      t.side.state = {A, A * u, p};
      if (t.equilibrate) t.side.state.Au = u;  // velocity kept until A is known
      s.tracts.push_back(t);
    }
  } else {
    SmoothConfig& m = s.smooth;
    const std::string sec = "smooth";
    m.L = s.L;
    m.rho = s.rho;
    m.h0 = c.number(sec, "h0", Dim::Thickness);
    m.A_bar = c.number(sec, "A_bar", Dim::Area);
    m.a_amp = c.number(sec, "a_amp", Dim::Area);
    m.P0_bar = c.number(sec, "P0_bar", Dim::Pressure);
    m.p_amp = c.number(sec, "p_amp", Dim::Pressure);
    m.E0_bar = c.number(sec, "E0_bar", Dim::Modulus);
    m.E_inf_bar = c.number(sec, "E_inf_bar", Dim::Modulus);
    m.e_amp = c.number(sec, "e_amp", Dim::Modulus);
    m.eta = c.number(sec, "eta", Dim::Viscosity);
    m.tau_r = c.number(sec, "tau_r", Dim::Time);
    m.Au = c.number(sec, "Au", Dim::Flow);
    m.cell_average = c.boolean_or(sec, "cell_average", false);
  }

  if (c.has_section("probes")) {
    const auto names = c.words("probes", "names");
    const auto xs = c.list("probes", "x", Dim::Length);
    if (names.size() != xs.size()) throw ConfigError("[probes] names and x must have equal length");
    for (std::size_t i = 0; i < xs.size(); ++i) s.probes.push_back({names[i], xs[i]});
  }
  s.out_dir = c.text_or("output", "dir", s.out_dir);

  // resolve equilibrated tracts: A from p, then Au from the stored velocity
  for (auto& t : s.tracts) {
    if (!t.equilibrate) continue;
    const double u = t.side.state.Au;
    t.side.state.A = inverse_elastic_pressure(t.side.state.p, t.side.wall);
    t.side.state.Au = t.side.state.A * u;
  }
  c.check_all_used();
  s.validate();
  return s;
}

inline SimConfig load_config(const std::string& path) { return parse_config(ConfigFile::load(path)); }

/// Resolved configuration in the same text format (SI units spelled out), so
/// that it reads back to an identical SimConfig.
inline std::string to_text(const SimConfig& s) {
  using detail::fmt;
  std::ostringstream o;
  o << "[scenario]\nname = " << s.name
    << "\nkind = " << (s.kind == ScenarioKind::Tracts ? "tracts" : "smooth")
    << "\nclosure = " << (s.closure == Closure::Sls ? "sls" : "elastic")
    << "\nstent_tract = " << s.stent_tract << "\n\n";
  o << "[grid]\nL = " << fmt(s.L) << " m\nnx = " << s.nx << "\n\n";
  o << "[fluid]\nrho = " << fmt(s.rho) << "\n\n";
  o << "[time]\nt_end = " << fmt(s.t_end) << " s\ncfl = " << fmt(s.steps.cfl)
    << "\nnu = " << fmt(s.steps.nu) << "\ndt_min = " << fmt(s.steps.dt_min) << " s\n";
  if (std::isfinite(s.steps.dt_max)) o << "dt_max = " << fmt(s.steps.dt_max) << " s\n";
  o << "dt_rule = " << (s.steps.rule == DtRule::Hyperbolic ? "hyperbolic" : "less_restrictive")
    << "\ncycle = " << fmt(s.cycle) << " s\nsnapshots = " << s.snapshots << "\n\n";
  o << "[numerics]\nweno_eps = " << fmt(s.spatial.weno_eps)
    << "\ngauss_nodes = " << s.spatial.gauss_nodes << "\n\n";
  o << "[boundary]\nmode = " << detail::mode_name(s.boundary) << "\n\n";
  if (s.inflow) {
    const auto& f = *s.inflow;
    o << "[inflow]\nshape = " << f.shape << "\nq_max = " << fmt(f.q_max)
      << " m3/s\nt_systole = " << fmt(f.t_systole) << " s\nperiod = " << fmt(f.period)
      << " s\nq = " << fmt(f.q) << " m3/s\n";
    if (!f.file.empty()) o << "file = " << f.file << "\n";
    o << "\n";
  }
  if (s.rcr) {
    const auto& r = *s.rcr;
    o << "[rcr]\nR1 = " << fmt(r.R1) << " Pa.s/m3\nR2 = " << fmt(r.R2)
      << " Pa.s/m3\nC = " << fmt(r.C) << " m3/Pa\np_out = " << fmt(r.p_out) << " Pa\n";
    if (!std::isnan(r.p_C)) o << "p_C = " << fmt(r.p_C) << " Pa\n";
    o << "\n";
  }
  for (std::size_t i = 0; i < s.tracts.size(); ++i) {
    const auto& t = s.tracts[i];
    const auto& w = t.side.wall;
    o << "[tract." << i + 1 << "]\nx_end = " << fmt(t.x_end) << " m\nkind = "
      << detail::kind_name(w.kind) << "\nA0 = " << fmt(w.A0) << " m2\nh0 = " << fmt(w.h0)
      << " m\nE0 = " << fmt(w.E0) << " Pa\nE_inf = " << fmt(w.E_inf) << " Pa\neta = "
      << fmt(w.eta) << " Pa.s\ntau_r = " << fmt(w.tau_r) << " s\np0 = " << fmt(w.p0)
      << " Pa\nA = " << fmt(t.side.state.A) << " m2\nu = " << fmt(t.side.state.u())
      << " m/s\np = " << fmt(t.side.state.p) << " Pa\n\n";
  }
  if (s.kind == ScenarioKind::Smooth) {
    const auto& m = s.smooth;
    o << "[smooth]\nh0 = " << fmt(m.h0) << " m\nA_bar = " << fmt(m.A_bar)
      << " m2\na_amp = " << fmt(m.a_amp) << " m2\nP0_bar = " << fmt(m.P0_bar)
      << " Pa\np_amp = " << fmt(m.p_amp) << " Pa\nE0_bar = " << fmt(m.E0_bar)
      << " Pa\nE_inf_bar = " << fmt(m.E_inf_bar) << " Pa\ne_amp = " << fmt(m.e_amp)
      << " Pa\neta = " << fmt(m.eta) << " Pa.s\ntau_r = " << fmt(m.tau_r) << " s\nAu = "
      << fmt(m.Au) << " m3/s\ncell_average = " << (m.cell_average ? "true" : "false")
      << "\n\n";
  }
  if (!s.probes.empty()) {
    o << "[probes]\nnames = ";
    for (std::size_t i = 0; i < s.probes.size(); ++i) o << (i ? ", " : "") << s.probes[i].name;
    o << "\nx = ";
    for (std::size_t i = 0; i < s.probes.size(); ++i)
      o << (i ? ", " : "") << fmt(s.probes[i].x) << " m";
    o << "\n\n";
  }
  o << "[output]\ndir = " << s.out_dir << "\n";
  return o.str();
}

}  // namespace hemo
