#pragma once
//
// Command-line front end:
//
//   hemo1d run <config>
//   hemo1d rp <1..5> [--case a|b|c]
//   hemo1d accuracy [--closure sls|kv|el] [--levels n]
//   hemo1d stent [--no-stent]
//
// common flags: --nx, --tend, --out, --weno-eps, --print-config
// Exit codes: 0 success, 1 runtime/model error, 2 usage error.
//

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hemo1d/analysis.hpp"
#include "hemo1d/presets.hpp"

namespace hemo {

struct CliOverrides {
  std::optional<int> nx;
  std::optional<double> t_end;
  std::optional<std::string> out;
  std::optional<double> weno_eps;

  void apply(SimConfig& c) const {
    if (nx) c.nx = *nx;
    if (t_end) c.t_end = *t_end;
    if (weno_eps) c.spatial.weno_eps = *weno_eps;
    c.validate();
  }
  /// --out beats the environment, which beats the config file.
  std::filesystem::path dir(const SimConfig& c) const {
    return out ? std::filesystem::path(*out) : output_dir(c.out_dir);
  }
};

namespace detail {

inline void print_run(std::ostream& out, const RunResult& r,
                      const std::vector<std::filesystem::path>& files) {
  out << r.problem.cfg.name << ": nx=" << r.nx() << " t=" << r.t << " s steps=" << r.steps
      << " (" << std::fixed << std::setprecision(2) << r.wall_seconds << " s)\n"
      << std::defaultfloat << std::setprecision(6);
  for (const auto& f : files) out << "  wrote " << f.string() << "\n";
}

inline void write_exact(const RpSolution& s, const RunResult& r, const std::filesystem::path& dir,
                        std::vector<std::filesystem::path>& files) {
  Table t{{"x", "A", "Au", "u", "p", "alpha"}, {}};
  const auto& g = r.problem.physical.grid;
  for (int i = 0; i < r.nx(); ++i) {
    const double x = r.x(i);
    const CellState q = s.sample(x, r.t);
    t.rows.push_back({x, q.A, q.Au, q.u(), q.p, q.A / r.problem.physical.wall->A0[g.first() + i]});
  }
  const auto path = dir / (r.problem.cfg.name + "_exact.csv");
  write_csv(path, t);
  write_metadata(path, {{"scenario", r.problem.cfg.name},
                        {"kind", "exact_elastic"},
                        {"t", format_double(r.t)},
                        {"left_wave", to_string(s.left_wave)},
                        {"right_wave", to_string(s.right_wave)}});
  files.push_back(path);
}

inline int cmd_run(SimConfig c, const CliOverrides& ov, std::ostream& out) {
  ov.apply(c);
  const RunResult r = run_scenario(c);
  print_run(out, r, write_outputs(r, ov.dir(c)));
  return 0;
}

inline int cmd_rp(int id, char cs, const CliOverrides& ov, std::ostream& out) {
  SimConfig c = rp_config(id, cs);
  ov.apply(c);
  const RunResult r = run_scenario(c);
  const auto dir = ov.dir(c);
  auto files = write_outputs(r, dir);
  if (id > 1) write_exact(rp_oracle(c), r, dir, files);
  print_run(out, r, files);
  out << std::setprecision(4);
  if (id == 1) {
    const auto d = state_drift(r);
    out << "  drift from rest  A " << d[0] << "  Au " << d[1] << "  p " << d[2] << "\n";
  } else {
    const RpSolution s = rp_oracle(c);
    out << "  waves (numerical) " << detect_waves(r).str() << "\n"
        << "  waves (exact)     " << oracle_waves(s).str() << "\n";
    if (cs == 'a') out << "  L1(A) vs exact    " << rp_l1_error(r, s) << "\n";
  }
  out << "  TV(p)             " << total_variation(r.column("p")) << " Pa\n";
  return 0;
}

inline int cmd_accuracy(AccuracyColumn col, int levels, const CliOverrides& ov, std::ostream& out) {
  SimConfig c = accuracy_config(col);
  CliOverrides base = ov;
  const int nx0 = ov.nx.value_or(15);
  base.nx = nx0;
  base.apply(c);
  std::vector<int> ladder{nx0};
  for (int k = 1; k < levels; ++k) ladder.push_back(3 * ladder.back());
  c.name = std::string("accuracy_") + to_string(col);
  const AccuracyReport rep = run_accuracy_suite(c, ladder);

  Table t{{"nx", "err_A", "order_A", "err_Au", "order_Au", "err_p", "order_p"}, {}};
  out << "accuracy " << to_string(col) << " (relative L2 vs x3 grid, order log3)\n"
      << "    nx        A   ord        Au   ord         p   ord\n";
  for (const auto& row : rep.rows) {
    t.rows.push_back({static_cast<double>(row.nx), row.error[0], row.order[0], row.error[1],
                      row.order[1], row.error[2], row.order[2]});
    char line[160];
    std::snprintf(line, sizeof line, "%6d %9.3e %5.2f %9.3e %5.2f %9.3e %5.2f\n", row.nx,
                  row.error[0], row.order[0], row.error[1], row.order[1], row.error[2],
                  row.order[2]);
    out << line;
  }
  const auto path = ov.dir(c) / (c.name + ".csv");
  write_csv(path, t);
  Metadata m{{"scenario", c.name}, {"kind", "accuracy"}, {"t_end", format_double(c.t_end)},
             {"weno_eps", format_double(c.spatial.weno_eps)}};
  std::string steps;
  for (long s : rep.steps) steps += (steps.empty() ? "" : " ") + std::to_string(s);
  m["steps"] = steps;
  write_metadata(path, m);
  out << "  wrote " << path.string() << "\n";
  return 0;
}

inline int cmd_stent(bool stent, const CliOverrides& ov, std::ostream& out) {
  SimConfig c = stent_config(stent);
  ov.apply(c);
  const RunResult r = run_scenario(c);
  const auto dir = ov.dir(c);
  auto files = write_outputs(r, dir);

  // per-cycle hysteresis area of every probe
  const double T = c.cycle;
  const int cycles = static_cast<int>(std::floor(r.t / T + 1e-9));
  Table h{{"cycle"}, {}};
  for (const auto& p : r.probes) h.header.push_back(p.name);
  for (int k = 1; k <= cycles; ++k) {
    std::vector<double> row{static_cast<double>(k)};
    for (const auto& p : r.probes) row.push_back(hysteresis_area(p, (k - 1) * T, k * T));
    h.rows.push_back(row);
  }
  const auto hpath = dir / (c.name + "_hysteresis.csv");
  write_csv(hpath, h);
  write_metadata(hpath, {{"scenario", c.name}, {"kind", "hysteresis"}, {"units", "Pa m2"},
                         {"definition", "area of the (A, p - F(A)) loop per cycle"}});
  files.push_back(hpath);
  print_run(out, r, files);
  if (cycles >= 1) {
    const double t0 = (cycles - 1) * T, t1 = cycles * T;
    out << std::setprecision(4) << "  last cycle [" << t0 << ", " << t1 << "] s\n";
    for (const auto& p : r.probes) {
      out << "  " << p.name << ": p_max " << units::to_mmhg(peak(p.t, p.p, t0, t1))
          << " mmHg, alpha excursion " << excursion(p.t, p.alpha, t0, t1) << ", loop area "
          << hysteresis_area(p, t0, t1) << " Pa m2";
      if (cycles >= 2) out << ", cycle change " << cycle_difference(p, p.p, T, cycles);
      out << "\n";
    }
  }
  return 0;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"One-dimensional viscoelastic blood flow solver", "hemo1d"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOverrides ov;
  int nx = 0;
  double t_end = 0.0, eps = 0.0;
  std::string out_dir;
  bool print_config = false;
  auto* o_nx = app.add_option("--nx", nx, "number of cells (accuracy: coarsest level)")->check(CLI::Range(3, 1 << 24));
  auto* o_t = app.add_option("--tend", t_end, "final time [s]")->check(CLI::PositiveNumber);
  auto* o_out = app.add_option("--out", out_dir, "output directory (overrides $" + std::string(kOutDirEnv) + ")");
  auto* o_eps = app.add_option("--weno-eps", eps, "WENO smoothness epsilon")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "print the scenario configuration and exit");

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "config file")->required();

  int rp_id = 1;
  std::string rp_case = "a";
  auto* rp = app.add_subcommand("rp", "Riemann problem 1..5");
  rp->add_option("id", rp_id, "problem number")->required()->check(CLI::Range(1, 5));
  rp->add_option("--case", rp_case, "wall configuration")->check(CLI::IsMember({"a", "b", "c"}));

  std::string closure = "sls";
  int levels = 4;
  auto* acc = app.add_subcommand("accuracy", "convergence study on smooth periodic data");
  acc->add_option("--closure", closure, "parameter set")->check(CLI::IsMember({"sls", "kv", "el"}));
  acc->add_option("--levels", levels, "number of refinement levels")->check(CLI::Range(2, 8));

  bool no_stent = false;
  auto* st = app.add_subcommand("stent", "thoracic aorta with a stent");
  st->add_flag("--no-stent", no_stent, "replace the stented tract by native wall");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hemo1d: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (o_nx->count()) ov.nx = nx;
  if (o_t->count()) ov.t_end = t_end;
  if (o_out->count()) ov.out = out_dir;
  if (o_eps->count()) ov.weno_eps = eps;

  try {
    if (print_config) {
      if (*run) out << to_text(load_config(config_path));
      else if (*rp) out << rp_config_text(rp_id, rp_case[0]);
      else if (*acc) out << accuracy_config_text(parse_accuracy_column(closure));
      else out << stent_config_text(!no_stent);
      return 0;
    }
    if (*run) return detail::cmd_run(load_config(config_path), ov, out);
    if (*rp) {
      check_rp_id(rp_id, rp_case[0]);
      return detail::cmd_rp(rp_id, rp_case[0], ov, out);
    }
    if (*acc) return detail::cmd_accuracy(parse_accuracy_column(closure), levels, ov, out);
    return detail::cmd_stent(!no_stent, ov, out);
  } catch (const std::exception& e) {
    err << "hemo1d: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hemo
