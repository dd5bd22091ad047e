#pragma once
//
// From a SimConfig to a finished run: physical initial data, conversion to
// the dimensionless solver variables, time marching with probe and
// space-time recording, and conversion of the results back to SI units.
//

#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "hemo1d/boundary.hpp"
#include "hemo1d/config.hpp"
#include "hemo1d/csv.hpp"
#include "hemo1d/imex.hpp"
#include "hemo1d/mesh.hpp"
#include "hemo1d/nondim.hpp"

namespace hemo {

/// Everything needed to start a run, in both unit systems.
struct Problem {
  SimConfig cfg;
  CharacteristicScales scales;
  FieldSet physical;  // SI, initial state
  FieldSet solver;    // dimensionless, initial state
  BoundarySpec bc;    // dimensionless
  StepControls steps; // dimensionless
  double t_end = 0.0; // dimensionless
  std::vector<int> probe_cells;  // storage indices
};

namespace detail {

inline WallModel apply_closure(WallModel w, Closure c) {
  if (c == Closure::Elastic) {
    w.E0 = w.E_inf;
    w.eta = 0.0;
    w.tau_r = 0.0;
  }
  return w;
}

inline FieldSet physical_initial(const SimConfig& cfg) {
  if (cfg.kind == ScenarioKind::Smooth) {
    SmoothConfig sc = cfg.smooth;
    if (cfg.closure == Closure::Elastic) {
      sc.E0_bar = sc.E_inf_bar;
      sc.eta = 0.0;
      sc.tau_r = 0.0;
    }
    return init_smooth_periodic(sc, cfg.nx);
  }
  const Grid1D grid(cfg.L, cfg.nx);
  const auto& tracts = cfg.tracts;
  auto tract_of = [&](double x) -> const TractConfig& {
    for (const auto& t : tracts)
      if (x <= t.x_end) return t;
    return tracts.back();
  };
  const VesselKind kind = tracts.front().side.wall.kind;
  for (const auto& t : tracts)
    if (t.side.wall.kind != kind) throw ConfigError("all tracts must share the vessel kind");
  return init_from_functions(
      grid, cfg.rho, kind,
      [&](double x) { return apply_closure(tract_of(x).side.wall, cfg.closure); },
      [&](double x) {
        const auto& t = tract_of(x);
        CellState s = t.side.state;
        // elastic cells follow p = F(A) exactly; tabulated pressures are rounded
        const WallModel w = apply_closure(t.side.wall, cfg.closure);
        if (!(w.tau_r > 0.0)) s.p = elastic_pressure(s.A, w);
        return s;
      },
      cfg.boundary == BoundaryMode::Periodic);
}

inline int probe_cell(const Grid1D& g, double x) {
  const int i = std::clamp(static_cast<int>(std::floor(x / g.dx())), 0, g.nx - 1);
  return g.first() + i;
}

}  // namespace detail

inline Problem build_problem(const SimConfig& cfg) {
  cfg.validate();
  Problem pb;
  pb.cfg = cfg;
  pb.physical = detail::physical_initial(cfg);
  const FieldSet& ph = pb.physical;
  const Grid1D& g = ph.grid;

  std::vector<double> area, e0, einf;
  for (int j = g.first(); j <= g.last(); ++j) {
    area.push_back(ph.q.A[j]);
    e0.push_back(ph.wall->E0[j]);
    einf.push_back(ph.wall->E_inf[j]);
  }
  pb.scales = scales_from_initial(cfg.L, area, e0, einf);
  const CharacteristicScales& s = pb.scales;

  auto wall = std::make_shared<WallField>(g.size(), ph.wall->kind);
  for (int j = 0; j < g.size(); ++j) wall->set(j, solver_wall(ph.wall->at(j), s));
  pb.solver = FieldSet{Grid1D(cfg.L / s.L, cfg.nx), cfg.rho / s.rho, std::move(wall),
                       StateField(g.size())};
  for (int j = g.first(); j <= g.last(); ++j) pb.solver.q.set(j, to_dimensionless(ph.q.at(j), s));

  pb.bc.mode = cfg.boundary;
  if (cfg.boundary == BoundaryMode::Physical) {
    RcrCircuit rcr = *cfg.rcr;
    if (std::isnan(rcr.p_C)) rcr.p_C = rcr.p_out + cfg.inflow->mean() * rcr.R2;
    pb.bc.physical = PhysicalBoundary{cfg.inflow->waveform().scaled(s), rcr.scaled(s), {}};
  }

  pb.steps = cfg.steps;
  pb.steps.dt_min /= s.T;
  pb.steps.dt_max /= s.T;
  pb.t_end = cfg.t_end / s.T;
  for (const auto& p : cfg.probes) pb.probe_cells.push_back(detail::probe_cell(g, p.x));
  return pb;
}

struct ProbeSeries {
  std::string name;
  double x = 0.0;  // centre of the recorded cell [m]
  WallModel wall;  // SI parameters of that cell
  std::vector<double> t, A, Au, u, p, alpha;

  void push(double time, const CellState& q) {
    t.push_back(time);
    A.push_back(q.A);
    Au.push_back(q.Au);
    u.push_back(q.u());
    p.push_back(q.p);
    alpha.push_back(q.A / wall.A0);
  }
  std::size_t size() const { return t.size(); }

  Table table() const {
    Table tb{{"t", "A", "Au", "u", "p", "alpha"}, {}};
    for (std::size_t i = 0; i < t.size(); ++i) tb.rows.push_back({t[i], A[i], Au[i], u[i], p[i], alpha[i]});
    return tb;
  }
};

struct RunResult {
  Problem problem;
  FieldSet final_state;  // dimensionless
  double t = 0.0;        // final time [s]
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<ProbeSeries> probes;
  Table space_time{{"t", "x", "A", "Au", "u", "p", "alpha"}, {}};

  /// Final physical state of interior cell i.
  CellState state(int i) const {
    return from_dimensionless(final_state.q.at(final_state.grid.first() + i), problem.scales);
  }
  double x(int i) const { return problem.physical.grid.center(problem.physical.grid.first() + i); }
  int nx() const { return problem.physical.grid.nx; }

  /// Columns of the final physical profile.
  std::vector<double> column(const std::string& name) const {
    std::vector<double> out;
    for (int i = 0; i < nx(); ++i) {
      const CellState s = state(i);
      const double A0 = problem.physical.wall->A0[problem.physical.grid.first() + i];
      if (name == "x") out.push_back(x(i));
      else if (name == "A") out.push_back(s.A);
      else if (name == "Au") out.push_back(s.Au);
      else if (name == "u") out.push_back(s.u());
      else if (name == "p") out.push_back(s.p);
      else if (name == "alpha") out.push_back(s.A / A0);
      else throw Error("unknown profile column '" + name + "'");
    }
    return out;
  }

  Table profile() const {
    Table tb{{"x", "A", "Au", "u", "p", "alpha"}, {}};
    const auto& g = problem.physical.grid;
    for (int i = 0; i < nx(); ++i) {
      const CellState s = state(i);
      tb.rows.push_back({x(i), s.A, s.Au, s.u(), s.p, s.A / problem.physical.wall->A0[g.first() + i]});
    }
    return tb;
  }
};

struct RunHooks {
  /// Called after every step with the simulation and the physical time.
  std::function<void(const Simulation&, double)> on_step;
};

inline RunResult run_problem(Problem pb, const RunHooks& hooks = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const CharacteristicScales s = pb.scales;
  Simulation sim(pb.solver, pb.bc, pb.cfg.spatial, pb.steps);
  RunResult r;

  const auto& g = pb.physical.grid;
  for (std::size_t k = 0; k < pb.probe_cells.size(); ++k) {
    ProbeSeries ps;
    ps.name = pb.cfg.probes[k].name;
    ps.x = g.center(pb.probe_cells[k]);
    ps.wall = pb.physical.wall->at(pb.probe_cells[k]);
    r.probes.push_back(std::move(ps));
  }
  auto record = [&](const Simulation& sm) {
    const double t = sm.time() * s.T;
    for (std::size_t k = 0; k < r.probes.size(); ++k)
      r.probes[k].push(t, from_dimensionless(sm.fields().q.at(pb.probe_cells[k]), s));
  };
  const int nsnap = pb.cfg.snapshots;
  int next_snap = 0;
  auto snapshot = [&](const Simulation& sm) {
    const double t = sm.time() * s.T;
    if (nsnap <= 0 || next_snap > nsnap) return;
    if (t < pb.cfg.t_end * next_snap / nsnap * (1.0 - 1e-12)) return;
    const auto& f = sm.fields();
    for (int j = g.first(); j <= g.last(); ++j) {
      const CellState q = from_dimensionless(f.q.at(j), s);
      r.space_time.rows.push_back({t, g.center(j), q.A, q.Au, q.u(), q.p, q.A / pb.physical.wall->A0[j]});
    }
    while (next_snap <= nsnap && t >= pb.cfg.t_end * next_snap / nsnap * (1.0 - 1e-12)) ++next_snap;
  };

  record(sim);
  snapshot(sim);
  sim.run_until(pb.t_end, [&](const Simulation& sm) {
    record(sm);
    snapshot(sm);
    if (hooks.on_step) hooks.on_step(sm, sm.time() * s.T);
  });

  r.final_state = sim.fields();
  r.t = sim.time() * s.T;
  r.steps = sim.steps();
  r.problem = std::move(pb);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline RunResult run_scenario(const SimConfig& cfg, const RunHooks& hooks = {}) {
  return run_problem(build_problem(cfg), hooks);
}

/// Writes <name>_profile.csv, <name>_probe_<probe>.csv and, when recorded,
/// <name>_spacetime.csv into dir, each with a metadata sidecar; also the
/// resolved configuration as <name>.resolved.cfg. Returns the written CSV paths.
inline std::vector<std::filesystem::path> write_outputs(const RunResult& r,
                                                        const std::filesystem::path& dir) {
  const SimConfig& c = r.problem.cfg;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string cfg_text = to_text(c);
  const auto cfg_path = dir / (c.name + ".resolved.cfg");
  {
    std::ofstream out(cfg_path);
    if (!out) throw IoError("cannot write " + cfg_path.string());
    out << cfg_text;
  }
  Metadata base{{"scenario", c.name},
                {"nx", std::to_string(c.nx)},
                {"t_end", format_double(r.t)},
                {"steps", std::to_string(r.steps)},
                {"units", "x[m] t[s] A[m2] Au[m3/s] u[m/s] p[Pa] alpha[-]"},
                {"config", cfg_path.filename().string()},
                {"scale_L", format_double(r.problem.scales.L)},
                {"scale_T", format_double(r.problem.scales.T)},
                {"scale_A", format_double(r.problem.scales.A)},
                {"scale_E", format_double(r.problem.scales.E)}};
  // the full resolved config, flattened to one line per key
  {
    std::istringstream in(cfg_text);
    std::string line, section;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.front() == '[') {
        section = line.substr(1, line.size() - 2);
        continue;
      }
      const auto eq = line.find(" = ");
      base["cfg." + section + "." + line.substr(0, eq)] = line.substr(eq + 3);
    }
  }

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& suffix, const Table& t, Metadata m) {
    const auto path = dir / (c.name + suffix + ".csv");
    write_csv(path, t);
    write_metadata(path, m);
    written.push_back(path);
  };
  Metadata prof = base;
  prof["kind"] = "profile";
  emit("_profile", r.profile(), prof);
  for (const auto& p : r.probes) {
    Metadata m = base;
    m["kind"] = "probe";
    m["probe"] = p.name;
    m["probe_x"] = format_double(p.x);
    emit("_probe_" + p.name, p.table(), m);
  }
  if (!r.space_time.rows.empty()) {
    Metadata m = base;
    m["kind"] = "space_time";
    emit("_spacetime", r.space_time, m);
  }
  return written;
}

}  // namespace hemo
