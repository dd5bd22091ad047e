#pragma once
//
// Post-processing: error norms, total variation, hysteresis loops, cycle
// comparison, oracle errors for the Riemann problems and the convergence
// ladder of the accuracy study.
//

#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <vector>

#include "hemo1d/error.hpp"
#include "hemo1d/exact_rp.hpp"
#include "hemo1d/scenario.hpp"

namespace hemo {

/// sqrt(sum (a-b)^2 / sum b^2).
inline double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw ParameterError("relative_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

inline double total_variation(const std::vector<double>& v) {
  double tv = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
  return tv;
}

/// Drift of the final dimensionless state from the initial one, per variable
/// (A, Au, p): ||q - q0|| / max(||q0||, sqrt(N)), i.e. relative, falling back
/// to an RMS measure for variables that start identically zero (Au at rest).
inline std::array<double, 3> state_drift(const RunResult& r) {
  const StateField& a = r.final_state.q;
  const StateField& b = r.problem.solver.q;
  const Grid1D& g = r.final_state.grid;
  std::array<double, 3> out{};
  const std::vector<double> StateField::*fields[3] = {&StateField::A, &StateField::Au, &StateField::p};
  for (int v = 0; v < 3; ++v) {
    double num = 0.0, den = 0.0;
    for (int j = g.first(); j <= g.last(); ++j) {
      const double x = (a.*fields[v])[j], y = (b.*fields[v])[j];
      num += (x - y) * (x - y);
      den += y * y;
    }
    out[v] = std::sqrt(num) / std::max(std::sqrt(den), std::sqrt(static_cast<double>(g.nx)));
  }
  return out;
}

/// Signed shoelace area of the closed polygon through (x_i, y_i).
inline double shoelace_area(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ParameterError("shoelace_area: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (i + 1) % n;
    s += x[i] * y[k] - x[k] * y[i];
  }
  return 0.5 * s;
}

/// Index range [first, last) of samples with t in [t0, t1].
inline std::pair<std::size_t, std::size_t> time_window(const std::vector<double>& t, double t0,
                                                       double t1) {
  const auto b = std::lower_bound(t.begin(), t.end(), t0 - 1e-12 * std::max(1.0, std::abs(t0)));
  const auto e = std::upper_bound(t.begin(), t.end(), t1 + 1e-12 * std::max(1.0, std::abs(t1)));
  return {static_cast<std::size_t>(b - t.begin()), static_cast<std::size_t>(e - t.begin())};
}

/// Area of the (A, p) loop traced by a probe over [t0, t1]. Only the part of p
/// that deviates from the elastic law encloses area, so the loop is taken in
/// (A, p - F(A)): it is exactly zero for an elastic wall and the sampling error
/// of the elastic branch drops out. Units Pa m^2; positive for a dissipative wall.
inline double hysteresis_area(const ProbeSeries& s, double t0, double t1) {
  const auto [b, e] = time_window(s.t, t0, t1);
  std::vector<double> A, pv;
  for (std::size_t i = b; i < e; ++i) {
    A.push_back(s.A[i]);
    pv.push_back(s.p[i] - elastic_pressure(s.A[i], s.wall));
  }
  return std::abs(shoelace_area(A, pv));
}

/// Plain (A, p) loop area (includes the sampling error of the elastic branch).
inline double loop_area(const ProbeSeries& s, double t0, double t1) {
  const auto [b, e] = time_window(s.t, t0, t1);
  std::vector<double> A(s.A.begin() + b, s.A.begin() + e), p(s.p.begin() + b, s.p.begin() + e);
  return std::abs(shoelace_area(A, p));
}

/// Linear interpolation of v(t) at the given times (t sorted increasingly).
inline std::vector<double> resample(const std::vector<double>& t, const std::vector<double>& v,
                                    const std::vector<double>& at) {
  if (t.size() != v.size() || t.size() < 2) throw ParameterError("resample: need >= 2 samples");
  std::vector<double> out;
  out.reserve(at.size());
  for (double x : at) {
    if (x < t.front() - 1e-12 || x > t.back() + 1e-12) throw DomainError("resample: outside series");
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - t.begin()), 1, t.size() - 1);
    const double f = (x - t[i - 1]) / (t[i] - t[i - 1]);
    out.push_back(v[i - 1] + f * (v[i] - v[i - 1]));
  }
  return out;
}

/// Relative L2 difference of a probe variable between cycle k and k-1
/// (1-based), sampled at n equally spaced phases.
inline double cycle_difference(const ProbeSeries& s, const std::vector<double>& v, double period,
                               int k, int n = 1000) {
  std::vector<double> cur, prev;
  for (int i = 0; i < n; ++i) {
    const double ph = (i + 0.5) * period / n;
    cur.push_back((k - 1) * period + ph);
    prev.push_back((k - 2) * period + ph);
  }
  return relative_l2(resample(s.t, v, cur), resample(s.t, v, prev));
}

/// max - min of v over [t0, t1].
inline double excursion(const std::vector<double>& t, const std::vector<double>& v, double t0,
                        double t1) {
  const auto [b, e] = time_window(t, t0, t1);
  if (b >= e) throw DomainError("excursion: empty window");
  const auto [lo, hi] = std::minmax_element(v.begin() + b, v.begin() + e);
  return *hi - *lo;
}

inline double peak(const std::vector<double>& t, const std::vector<double>& v, double t0, double t1) {
  const auto [b, e] = time_window(t, t0, t1);
  if (b >= e) throw DomainError("peak: empty window");
  return *std::max_element(v.begin() + b, v.begin() + e);
}

// ---------------------------------------------------------------------------
// Riemann problems

/// Elastic oracle for a two-tract configuration (uses E_inf of each side).
inline RpSolution rp_oracle(const SimConfig& c) {
  if (c.tracts.size() != 2) throw ConfigError("rp_oracle: need exactly two tracts");
  const auto& l = c.tracts[0].side;
  const auto& r = c.tracts[1].side;
  return solve_rp({l.state.A, l.state.u(), l.wall}, {r.state.A, r.state.u(), r.wall}, c.rho,
                  c.tracts[0].x_end);
}

/// Exact cell averages of A from the oracle (midpoint rule on sub-cells).
inline std::vector<double> oracle_cell_averages(const RpSolution& s, const Grid1D& g, double t,
                                                int sub = 32) {
  std::vector<double> out;
  const double dx = g.dx();
  for (int j = g.first(); j <= g.last(); ++j) {
    const double x0 = g.center(j) - 0.5 * dx;
    double acc = 0.0;
    for (int k = 0; k < sub; ++k) acc += s.sample(x0 + (k + 0.5) * dx / sub, t).A;
    out.push_back(acc / sub);
  }
  return out;
}

/// Relative L1 error of A against the oracle cell averages.
inline double rp_l1_error(const RunResult& r, const RpSolution& s) {
  const auto exact = oracle_cell_averages(s, r.problem.physical.grid, r.t);
  const auto A = r.column("A");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    num += std::abs(A[i] - exact[i]);
    den += std::abs(exact[i]);
  }
  return num / den;
}

struct WavePattern {
  WaveType left = WaveType::Rarefaction;
  WaveType right = WaveType::Rarefaction;
  bool contact = false;  // a stationary jump in A at the parameter discontinuity

  bool operator==(const WavePattern&) const = default;
  std::string str() const {
    return std::string(to_string(left)) + (contact ? " | contact | " : " | ") + to_string(right);
  }
};

/// Reads the wave pattern off a numerical solution. A wave moving into a side
/// is a shock when the area behind it (next to the contact) exceeds the
/// undisturbed area, a rarefaction otherwise.
inline WavePattern detect_waves(const RunResult& r) {
  const SimConfig& c = r.problem.cfg;
  if (c.tracts.size() != 2) throw ConfigError("detect_waves: need exactly two tracts");
  const Grid1D& g = r.problem.physical.grid;
  const auto A = r.column("A");
  const int n = g.nx;
  const int ic = std::clamp(static_cast<int>(c.tracts[0].x_end / g.dx()), 1, n - 1);  // first right cell
  const int m = std::max(2, n / 50);
  const double AL = c.tracts[0].side.state.A, AR = c.tracts[1].side.state.A;
  const double starL = A[ic - 1 - m], starR = A[ic + m];
  WavePattern w;
  w.left = starL > AL ? WaveType::Shock : WaveType::Rarefaction;
  w.right = starR > AR ? WaveType::Shock : WaveType::Rarefaction;
  const double jump = std::abs(A[ic] - A[ic - 1]);
  const double scale = std::max({std::abs(starL - AL), std::abs(starR - AR), 1e-300});
  w.contact = jump > 1e-3 * std::max(AL, AR) || jump > 0.1 * scale;
  return w;
}

/// Pattern from the oracle; the contact is present whenever A jumps across x0.
inline WavePattern oracle_waves(const RpSolution& s) {
  WavePattern w;
  w.left = s.left_wave;
  w.right = s.right_wave;
  w.contact = std::abs(s.A_star_left - s.A_star_right) > 1e-12 * s.A_star_left;
  return w;
}

// ---------------------------------------------------------------------------
// Accuracy study

struct AccuracyRow {
  int nx = 0;
  std::array<double, 3> error{};  // A, Au, p
  std::array<double, 3> order{std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN()};
};

struct AccuracyReport {
  std::string name;
  std::vector<AccuracyRow> rows;
  std::vector<long> steps;  // per run, ladder plus reference
};

/// Relative L2 of the coarse solution against the x3 refined one, comparing
/// coarse cell i with the centre fine cell 3i+1.
inline std::array<double, 3> refinement_error(const RunResult& coarse, const RunResult& fine) {
  if (fine.nx() != 3 * coarse.nx()) throw ParameterError("refinement_error: need a x3 refinement");
  std::array<double, 3> e{};
  const char* names[3] = {"A", "Au", "p"};
  for (int v = 0; v < 3; ++v) {
    const auto c = coarse.column(names[v]);
    const auto f = fine.column(names[v]);
    std::vector<double> sub;
    for (int i = 0; i < coarse.nx(); ++i) sub.push_back(f[3 * i + 1]);
    e[v] = relative_l2(c, sub);
  }
  return e;
}

/// Runs the ladder nx_k = ladder[k] plus a 3x reference for the finest level
/// (concurrently when parallel), and tabulates errors and log3 orders.
inline AccuracyReport run_accuracy_suite(const SimConfig& base, std::vector<int> ladder = {15, 45, 135, 405},
                                         bool parallel = true) {
  if (ladder.empty()) throw ParameterError("run_accuracy_suite: empty ladder");
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (ladder[k] != 3 * ladder[k - 1]) throw ParameterError("run_accuracy_suite: levels must refine by 3");
  std::vector<int> all = ladder;
  all.push_back(3 * ladder.back());

  std::vector<std::future<RunResult>> jobs;
  for (int nx : all) {
    SimConfig c = base;
    c.nx = nx;
    c.probes.clear();
    c.snapshots = 0;
    jobs.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                              [c] { return run_scenario(c); }));
  }
  std::vector<RunResult> runs;
  for (auto& j : jobs) runs.push_back(j.get());

  AccuracyReport rep;
  rep.name = base.name;
  for (const auto& r : runs) rep.steps.push_back(r.steps);
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    AccuracyRow row;
    row.nx = ladder[k];
    row.error = refinement_error(runs[k], runs[k + 1]);
    if (k > 0)
      for (int v = 0; v < 3; ++v)
        row.order[v] = std::log(rep.rows.back().error[v] / row.error[v]) / std::log(3.0);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace hemo
