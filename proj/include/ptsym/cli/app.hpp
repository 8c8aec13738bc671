#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptsym/acceptance.hpp"
#include "ptsym/classical/period.hpp"
#include "ptsym/geometry/wedges.hpp"
#include "ptsym/quantum/spectrum.hpp"
#include "ptsym/support/format.hpp"
#include "ptsym/version.hpp"

namespace ptsym::cli {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// ---------------------------------------------------------------------------
// argument parsing

inline double parse_number(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw std::invalid_argument(what + ": '" + std::string(s) +
                                "' is not a number");
  return v;
}

/// Grid syntax start:stop:step, endpoints included within half a step.
inline std::vector<double> parse_grid(const std::string& spec) {
  double part[3] = {0.0, 0.0, 0.0};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t next = spec.find(':', pos);
    if ((i < 2) != (next != std::string::npos))
      throw std::invalid_argument("grid '" + spec +
                                  "': expected start:stop:step");
    const std::string_view field =
        std::string_view(spec).substr(pos, next == std::string::npos
                                               ? std::string::npos
                                               : next - pos);
    part[i] = parse_number(field, "grid '" + spec + "'");
    pos = next + 1;
  }
  if (!(part[2] > 0.0))
    throw std::invalid_argument("grid '" + spec + "': step must be > 0");
  if (part[1] < part[0])
    throw std::invalid_argument("grid '" + spec + "': stop is below start");
  std::vector<double> g;
  for (long long i = 0;; ++i) {
    const double x = part[0] + static_cast<double>(i) * part[2];
    if (x > part[1] + 0.5 * part[2]) break;
    g.push_back(x);
    if (g.size() > 2000000)
      throw std::invalid_argument("grid '" + spec + "': too many points");
  }
  // The last point is meant to be the stop value; drop the rounding fuzz
  // that start + n * step accumulates.
  if (!g.empty() &&
      std::abs(g.back() - part[1]) <=
          1e-12 * std::max(1.0, std::abs(part[1])))
    g.back() = part[1];
  return g;
}

/// Either a single integer or an inclusive range a..b.
inline std::vector<int> parse_k_range(const std::string& spec) {
  auto parse_int = [&](std::string_view s) -> int {
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
      throw std::invalid_argument("K range '" + spec +
                                  "': '" + std::string(s) +
                                  "' is not an integer");
    return v;
  };
  const std::size_t dots = spec.find("..");
  if (dots == std::string::npos) return {parse_int(spec)};
  const int a = parse_int(std::string_view(spec).substr(0, dots));
  const int b = parse_int(std::string_view(spec).substr(dots + 2));
  if (b < a)
    throw std::invalid_argument("K range '" + spec + "': must be ascending");
  if (b - a > 999)
    throw std::invalid_argument("K range '" + spec + "': too wide");
  std::vector<int> ks;
  for (int k = a; k <= b; ++k) ks.push_back(k);
  return ks;
}

// ---------------------------------------------------------------------------
// output plumbing

struct Table {
  std::vector<std::string> columns;
  std::vector<ordered_json> rows;
  std::vector<std::string> footer;  ///< extra CSV comment lines
  ordered_json summary;             ///< attached to the JSON envelope if set
};

inline std::string cell(const ordered_json& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return support::format_bool(v.get<bool>());
  if (v.is_number_float()) return support::format_double(v.get<double>());
  if (v.is_number_unsigned())
    return std::to_string(v.get<unsigned long long>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_string()) return support::csv_field(v.get<std::string>());
  return support::csv_field(v.dump());
}

inline std::string to_csv(const Table& t, const ordered_json& config) {
  std::string s = "# ";
  s += config.dump();
  s += '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) s += ',';
    s += t.columns[i];
  }
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) s += ',';
      s += cell(row.at(t.columns[i]));
    }
    s += '\n';
  }
  for (const auto& line : t.footer) {
    s += "# ";
    s += line;
    s += '\n';
  }
  return s;
}

inline std::string to_json_envelope(const Table& t,
                                    const ordered_json& config,
                                    double wall_time_s) {
  ordered_json env;
  env["version"] = version_string;
  env["config"] = config;
  env["wall_time_s"] = wall_time_s;
  env["rows"] = ordered_json::array();
  for (const auto& row : t.rows) env["rows"].push_back(row);
  if (!t.summary.is_null()) env["summary"] = t.summary;
  return env.dump(2) + "\n";
}

inline void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::invalid_argument("cannot open output file '" + path + "'");
  f << body;
  f.flush();
  if (!f) throw std::invalid_argument("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// commands

struct Opts {
  double epsilon = 0.0;
  std::string k_range;
  int k = 0;
  int k_wedge = 0;
  int k_pair = 0;
  std::string grid;
  double e_min = std::numeric_limits<double>::quiet_NaN();
  double e_max = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;    ///< 0 keeps the library defaults
  double t_max = 0.0;  ///< 0 picks the per-command default
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
  bool fixed_clock = false;
  std::string resume;
};

class Stopwatch {
 public:
  explicit Stopwatch(bool fixed) : fixed_(fixed) {}
  double seconds() const {
    if (fixed_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0_)
        .count();
  }

 private:
  bool fixed_;
  std::chrono::steady_clock::time_point t0_ =
      std::chrono::steady_clock::now();
};

inline int emit(const Opts& o, const Table& t, const ordered_json& config,
                const Stopwatch& watch) {
  write_output(o.out, o.format == "json"
                          ? to_json_envelope(t, config, watch.seconds())
                          : to_csv(t, config));
  return 0;
}

inline ordered_json base_config(const char* command, const Opts& o) {
  ordered_json c;
  c["command"] = command;
  c["format"] = o.format;
  c["fixed_clock"] = o.fixed_clock;
  return c;
}

inline int cmd_wedges(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  Table t;
  t.columns = {"k", "lower", "center", "upper", "opening"};
  for (const int k : parse_k_range(o.k_range)) {
    const geom::Wedge w = geom::wedge(k, o.epsilon);
    ordered_json row;
    row["k"] = k;
    row["lower"] = w.theta_lower;
    row["center"] = w.theta_center;
    row["upper"] = w.theta_upper;
    row["opening"] = w.opening;
    t.rows.push_back(std::move(row));
  }
  ordered_json cfg = base_config("wedges", o);
  cfg["epsilon"] = o.epsilon;
  cfg["k"] = o.k_range;
  return emit(o, t, cfg, watch);
}

inline int cmd_turning_points(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  Table t;
  t.columns = {"k", "theta", "re_x", "im_x", "residual"};
  for (const int k : parse_k_range(o.k_range)) {
    const geom::TurningPoint tp = geom::turning_point(k, o.epsilon);
    ordered_json row;
    row["k"] = k;
    row["theta"] = tp.theta;
    row["re_x"] = tp.x.real();
    row["im_x"] = tp.x.imag();
    row["residual"] = tp.residual;
    t.rows.push_back(std::move(row));
  }
  ordered_json cfg = base_config("turning-points", o);
  cfg["epsilon"] = o.epsilon;
  cfg["k"] = o.k_range;
  return emit(o, t, cfg, watch);
}

inline int cmd_transitions(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  struct Line {
    int k_tp;
    geom::WedgeCrossing c;
  };
  std::vector<Line> lines;
  for (const int k : parse_k_range(o.k_range))
    for (const geom::WedgeCrossing& c :
         geom::transition_epsilons(k, o.k_wedge))
      lines.push_back({k, c});
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.c.epsilon != b.c.epsilon) return a.c.epsilon < b.c.epsilon;
    return a.k_tp < b.k_tp;
  });
  Table t;
  t.columns = {"k_tp", "k_wedge", "epsilon", "edge", "kind"};
  for (const Line& l : lines) {
    ordered_json row;
    row["k_tp"] = l.k_tp;
    row["k_wedge"] = o.k_wedge;
    row["epsilon"] = l.c.epsilon;
    row["edge"] = geom::to_string(l.c.edge);
    row["kind"] = geom::to_string(l.c.kind);
    t.rows.push_back(std::move(row));
  }
  ordered_json cfg = base_config("transitions", o);
  cfg["k"] = o.k_range;
  cfg["k_wedge"] = o.k_wedge;
  return emit(o, t, cfg, watch);
}

inline num::StepControl orbit_control(const Opts& o) {
  num::StepControl ctrl;
  if (o.tol > 0.0) {
    ctrl.rel_tol = o.tol;
    ctrl.abs_tol = o.tol * 1e-2;
  }
  return ctrl;
}

inline int cmd_orbit(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  const num::StepControl ctrl = orbit_control(o);
  const double t_max = o.t_max > 0.0 ? o.t_max : 500.0;
  const classical::OrbitRun run =
      classical::integrate_orbit_auto(o.k, o.epsilon, ctrl, t_max, {}, 1e-8);

  Table t;
  t.columns = {"t", "re_x", "im_x", "re_p", "im_p", "phase"};
  for (const auto& s : run.trajectory.samples) {
    ordered_json row;
    row["t"] = s.t;
    row["re_x"] = s.x.real();
    row["im_x"] = s.x.imag();
    row["re_p"] = s.p.real();
    row["im_p"] = s.p.imag();
    row["phase"] = s.phase;
    t.rows.push_back(std::move(row));
  }

  const auto& cl = run.classification;
  const double period =
      cl.closed ? cl.period : std::numeric_limits<double>::quiet_NaN();
  using support::format_bool;
  using support::format_double;
  t.footer.push_back(
      "closed=" + format_bool(cl.closed) + " period=" +
      format_double(period) + " pt_symmetric=" +
      format_bool(cl.pt_symmetric) + " reached_mirror=" +
      format_bool(cl.reached_mirror) + " reached_conjugate=" +
      format_bool(cl.reached_conjugate));
  t.footer.push_back(
      std::string("status=") + classical::to_string(run.trajectory.status) +
      " precision=" + num::to_string(run.precision) + " energy_drift=" +
      format_double(run.trajectory.max_energy_drift) + " mirror_defect=" +
      format_double(cl.mirror_defect) + " turn_events=" +
      std::to_string(cl.turn_events.size()));
  const std::size_t shown = std::min<std::size_t>(cl.turn_events.size(), 32);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& ev = cl.turn_events[i];
    t.footer.push_back("turn t=" + format_double(ev.time) + " re_x=" +
                       format_double(ev.x.real()) + " im_x=" +
                       format_double(ev.x.imag()) + " abs_p=" +
                       format_double(ev.abs_p));
  }
  if (shown < cl.turn_events.size())
    t.footer.push_back("turn_events_omitted=" +
                       std::to_string(cl.turn_events.size() - shown));

  ordered_json sum;
  sum["closed"] = cl.closed;
  sum["period"] = period;
  sum["pt_symmetric"] = cl.pt_symmetric;
  sum["reached_mirror"] = cl.reached_mirror;
  sum["reached_conjugate"] = cl.reached_conjugate;
  sum["mirror_defect"] = cl.mirror_defect;
  sum["energy_drift"] = run.trajectory.max_energy_drift;
  sum["status"] = classical::to_string(run.trajectory.status);
  sum["precision"] = num::to_string(run.precision);
  sum["turn_events"] = ordered_json::array();
  for (const auto& ev : cl.turn_events) {
    ordered_json e;
    e["t"] = ev.time;
    e["re_x"] = ev.x.real();
    e["im_x"] = ev.x.imag();
    e["abs_p"] = ev.abs_p;
    sum["turn_events"].push_back(std::move(e));
  }
  t.summary = std::move(sum);

  ordered_json cfg = base_config("orbit", o);
  cfg["epsilon"] = o.epsilon;
  cfg["k"] = o.k;
  cfg["rel_tol"] = ctrl.rel_tol;
  cfg["abs_tol"] = ctrl.abs_tol;
  cfg["t_max"] = t_max;
  cfg["drift_goal"] = 1e-8;
  emit(o, t, cfg, watch);
  const bool hard_failure =
      run.trajectory.status != classical::OrbitStatus::closed &&
      run.trajectory.status != classical::OrbitStatus::no_closure;
  return hard_failure ? 2 : 0;
}

inline int cmd_period_scan(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  const num::StepControl ctrl = orbit_control(o);
  const double t_max = o.t_max > 0.0 ? o.t_max : 2000.0;
  const std::vector<double> grid = parse_grid(o.grid);
  const auto rows = classical::period_scan(o.k, grid, ctrl, t_max, {},
                                           o.workers, 1e-8);
  Table t;
  t.columns = {"epsilon",           "closed",       "period",
               "pt_symmetric",      "reached_conjugate",
               "energy_drift",      "wall_time",    "status"};
  for (const auto& r : rows) {
    ordered_json row;
    row["epsilon"] = r.epsilon;
    row["closed"] = r.classification.closed;
    row["period"] = r.classification.closed
                        ? r.classification.period
                        : std::numeric_limits<double>::quiet_NaN();
    row["pt_symmetric"] = r.classification.pt_symmetric;
    row["reached_conjugate"] = r.classification.reached_conjugate;
    row["energy_drift"] = r.max_energy_drift;
    row["wall_time"] = o.fixed_clock ? 0.0 : r.wall_time_s;
    std::string status = classical::to_string(r.status);
    if (!r.error.empty()) status += ":" + r.error;
    row["status"] = status;
    t.rows.push_back(std::move(row));
  }
  ordered_json cfg = base_config("period-scan", o);
  cfg["k"] = o.k;
  cfg["grid"] = o.grid;
  cfg["rel_tol"] = ctrl.rel_tol;
  cfg["abs_tol"] = ctrl.abs_tol;
  cfg["t_max"] = t_max;
  cfg["drift_goal"] = 1e-8;
  return emit(o, t, cfg, watch);
}

inline quantum::ShootingConfig shooting_config(const Opts& o) {
  quantum::ShootingConfig cfg;
  if (o.tol > 0.0) {
    cfg.ode.rel_tol = o.tol;
    cfg.ode.abs_tol = o.tol * 1e-2;
  }
  return cfg;
}

inline void spectral_row(ordered_json& row, const quantum::SpectralPoint& p,
                         int label) {
  const bool has_value = p.status == quantum::PointStatus::ok ||
                         p.status == quantum::PointStatus::diverged ||
                         p.status == quantum::PointStatus::lost;
  row["epsilon"] = p.epsilon;
  row["k_pair"] = p.K_pair;
  row["branch_label"] = label;
  row["re_E"] = has_value ? p.E.real()
                          : std::numeric_limits<double>::quiet_NaN();
  row["im_E"] = has_value ? p.E.imag()
                          : std::numeric_limits<double>::quiet_NaN();
  row["is_real"] = p.is_real;
  row["residual"] = p.residual;
}

inline int cmd_spectrum(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  const quantum::ShootingConfig cfg = shooting_config(o);
  const double e_lo = std::isnan(o.e_min) ? 0.0 : o.e_min;
  const double e_hi = std::isnan(o.e_max) ? 30.0 : o.e_max;
  const auto roots = quantum::find_real_eigenvalues(o.epsilon, o.k_pair,
                                                    e_lo, e_hi, cfg,
                                                    o.workers);
  Table t;
  t.columns = {"epsilon", "k_pair", "branch_label",
               "re_E",    "im_E",   "is_real",
               "residual"};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ordered_json row;
    spectral_row(row, roots[i], static_cast<int>(i));
    t.rows.push_back(std::move(row));
  }
  ordered_json cfg_echo = base_config("spectrum", o);
  cfg_echo["epsilon"] = o.epsilon;
  cfg_echo["k_pair"] = o.k_pair;
  cfg_echo["e_min"] = e_lo;
  cfg_echo["e_max"] = e_hi;
  cfg_echo["ode_rel_tol"] = cfg.ode.rel_tol;
  cfg_echo["ode_abs_tol"] = cfg.ode.abs_tol;
  return emit(o, t, cfg_echo, watch);
}

inline std::optional<quantum::PointStatus> point_status_from(
    std::string_view s) {
  using PS = quantum::PointStatus;
  for (const PS v : {PS::ok, PS::diverged, PS::lost, PS::empty,
                     PS::degenerate})
    if (s == quantum::to_string(v)) return v;
  return std::nullopt;
}

inline std::optional<quantum::Provenance> provenance_from(
    std::string_view s) {
  using PV = quantum::Provenance;
  for (const PV v : {PV::fresh_scan, PV::continuation, PV::coalescence,
                     PV::manual})
    if (s == quantum::to_string(v)) return v;
  return std::nullopt;
}

inline double json_double(const ordered_json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

/// Reads back the rows of a previous spectrum-scan envelope.
inline std::vector<quantum::SpectralPoint> parse_resume_rows(
    const ordered_json& env, const std::string& path) {
  std::vector<quantum::SpectralPoint> pts;
  for (const auto& row : env.at("rows")) {
    quantum::SpectralPoint p;
    p.epsilon = row.at("epsilon").get<double>();
    p.K_pair = row.at("k_pair").get<int>();
    p.branch_label = row.at("branch_label").get<int>();
    p.E = {json_double(row.at("re_E")), json_double(row.at("im_E"))};
    p.is_real = row.at("is_real").get<bool>();
    p.residual = json_double(row.at("residual"));
    const auto st = point_status_from(
        row.at("status").get<std::string>());
    const auto pv = provenance_from(
        row.at("provenance").get<std::string>());
    if (!st || !pv)
      throw std::invalid_argument("resume file '" + path +
                                  "': unknown status or provenance");
    p.status = *st;
    p.provenance = *pv;
    p.converged = p.status == quantum::PointStatus::ok;
    pts.push_back(p);
  }
  return pts;
}

inline int cmd_spectrum_scan(const Opts& o) {
  const Stopwatch watch(o.fixed_clock);
  const quantum::ShootingConfig cfg = shooting_config(o);
  double e_lo = std::isnan(o.e_min) ? 0.0 : o.e_min;
  double e_hi = std::isnan(o.e_max) ? 30.0 : o.e_max;

  std::vector<quantum::SpectralPoint> old_points;
  std::vector<quantum::BranchSeed> seeds;
  if (!o.resume.empty()) {
    std::ifstream f(o.resume);
    if (!f)
      throw std::invalid_argument("cannot read resume file '" + o.resume +
                                  "'");
    ordered_json env;
    try {
      env = ordered_json::parse(f);
      const auto& rc = env.at("config");
      if (rc.at("command").get<std::string>() != "spectrum-scan")
        throw std::invalid_argument("resume file '" + o.resume +
                                    "' is not a spectrum-scan envelope");
      if (rc.at("k_pair").get<int>() != o.k_pair)
        throw std::invalid_argument("resume file '" + o.resume +
                                    "' was produced for a different pair");
      const double old_lo = rc.at("e_min").get<double>();
      const double old_hi = rc.at("e_max").get<double>();
      if (!std::isnan(o.e_min) && o.e_min != old_lo)
        throw std::invalid_argument(
            "resume: --emin differs from the envelope window");
      if (!std::isnan(o.e_max) && o.e_max != old_hi)
        throw std::invalid_argument(
            "resume: --emax differs from the envelope window");
      e_lo = old_lo;
      e_hi = old_hi;
      old_points = parse_resume_rows(env, o.resume);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("resume file '" + o.resume +
                                  "' is corrupt: " + e.what());
    }
    if (old_points.empty())
      throw std::invalid_argument("resume file '" + o.resume +
                                  "' carries no rows");
    // Seed from the newest grid point that still has live measurements;
    // branches retired before the end of the old run stay retired.
    double seed_eps = -std::numeric_limits<double>::infinity();
    for (const auto& p : old_points)
      if (p.status == quantum::PointStatus::ok)
        seed_eps = std::max(seed_eps, p.epsilon);
    if (!std::isfinite(seed_eps))
      throw std::invalid_argument("resume file '" + o.resume +
                                  "' has no live branches to continue");
    for (const auto& p : old_points)
      if (p.status == quantum::PointStatus::ok && p.epsilon == seed_eps)
        seeds.push_back({p.branch_label, p.E, p.is_real});
  }

  const std::vector<double> grid = parse_grid(o.grid);
  if (!old_points.empty()) {
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& p : old_points) last = std::max(last, p.epsilon);
    if (!(grid.front() > last))
      throw std::invalid_argument(
          "resume: the new grid must start above the resumed data (last "
          "recorded deformation " +
          support::format_double(last) + ")");
  }

  const quantum::ScanResult res = quantum::spectrum_scan(
      o.k_pair, grid, e_lo, e_hi, cfg, o.workers, seeds);

  std::vector<quantum::SpectralPoint> all = old_points;
  all.insert(all.end(), res.points.begin(), res.points.end());
  std::map<double, int> real_count;
  for (const auto& p : all)
    if (p.status == quantum::PointStatus::ok && p.is_real)
      ++real_count[p.epsilon];

  Table t;
  t.columns = {"epsilon", "k_pair",  "branch_label", "re_E",
               "im_E",    "is_real", "residual",     "status",
               "provenance", "real_count"};
  for (const auto& p : all) {
    ordered_json row;
    spectral_row(row, p, p.branch_label);
    row["status"] = quantum::to_string(p.status);
    row["provenance"] = quantum::to_string(p.provenance);
    const auto it = real_count.find(p.epsilon);
    row["real_count"] = it == real_count.end() ? 0 : it->second;
    t.rows.push_back(std::move(row));
  }

  ordered_json cfg_echo = base_config("spectrum-scan", o);
  cfg_echo["k_pair"] = o.k_pair;
  cfg_echo["grid"] = o.grid;
  cfg_echo["e_min"] = e_lo;
  cfg_echo["e_max"] = e_hi;
  cfg_echo["ode_rel_tol"] = cfg.ode.rel_tol;
  cfg_echo["ode_abs_tol"] = cfg.ode.abs_tol;
  cfg_echo["resume"] = o.resume;
  return emit(o, t, cfg_echo, watch);
}

inline int cmd_verify() {
  const auto results = acceptance::run_all(std::cout);
  int passed = 0;
  for (const auto& r : results)
    if (r.pass || r.indeterminate) ++passed;
  std::cout << "verification " << (acceptance::all_pass(results)
                                       ? "PASSED"
                                       : "FAILED")
            << " (" << passed << "/" << results.size() << ")\n";
  return acceptance::all_pass(results) ? 0 : 3;
}

}  // namespace detail

/// Parses and executes one invocation.  argv[0] is the program name.
/// Exit codes: 0 success (empty scientific results included), 1 usage
/// error, 2 numerical failure, 3 verification failure.
inline int run(int argc, const char* const* argv) {
  detail::Opts o;
  CLI::App app{
      "Stokes wedges, complex classical orbits, and shooting-method "
      "spectra of the deformed oscillator family"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_string));
  int rc = 0;

  const auto add_output = [&](CLI::App* c) {
    c->add_option("--out", o.out, "write the table to this file");
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    c->add_flag("--fixed-clock", o.fixed_clock,
                "report wall times as 0 so outputs compare byte for byte");
  };
  const auto add_workers = [&](CLI::App* c) {
    c->add_option("--workers", o.workers, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* wedges =
      app.add_subcommand("wedges", "decay wedge angles for a K range");
  wedges->add_option("--epsilon", o.epsilon, "deformation")
      ->required()
      ->check(CLI::NonNegativeNumber);
  wedges->add_option("--k", o.k_range, "wedge index or range a..b")
      ->required();
  add_output(wedges);
  wedges->callback([&] { rc = detail::cmd_wedges(o); });

  CLI::App* tps = app.add_subcommand("turning-points",
                                     "classical turning points on the "
                                     "unit circle of the covering surface");
  tps->add_option("--epsilon", o.epsilon, "deformation")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tps->add_option("--k", o.k_range, "index or range a..b")->required();
  add_output(tps);
  tps->callback([&] { rc = detail::cmd_turning_points(o); });

  CLI::App* trans = app.add_subcommand(
      "transitions",
      "deformations at which turning points cross the edges of one wedge");
  trans->add_option("--k-wedge", o.k_wedge, "wedge index")->required();
  o.k_range = "-8..8";
  trans->add_option("--k", o.k_range, "turning-point index or range a..b")
      ->capture_default_str();
  add_output(trans);
  trans->callback([&] { rc = detail::cmd_transitions(o); });

  CLI::App* orbit = app.add_subcommand(
      "orbit", "integrate one complex orbit and classify its closure");
  orbit->add_option("--epsilon", o.epsilon, "deformation")
      ->required()
      ->check(CLI::NonNegativeNumber);
  orbit->add_option("--k", o.k, "turning-point index")->required();
  orbit->add_option("--tol", o.tol, "relative step tolerance")
      ->check(CLI::NonNegativeNumber);
  orbit->add_option("--t-max", o.t_max, "integration horizon (default 500)")
      ->check(CLI::PositiveNumber);
  add_output(orbit);
  orbit->callback([&] { rc = detail::cmd_orbit(o); });

  CLI::App* pscan = app.add_subcommand(
      "period-scan", "orbit periods over a deformation grid");
  pscan->add_option("--k", o.k, "turning-point index")->required();
  pscan->add_option("--grid", o.grid, "deformation grid start:stop:step")
      ->required();
  pscan->add_option("--tol", o.tol, "relative step tolerance")
      ->check(CLI::NonNegativeNumber);
  pscan->add_option("--t-max", o.t_max,
                    "integration horizon per orbit (default 2000)")
      ->check(CLI::PositiveNumber);
  add_workers(pscan);
  add_output(pscan);
  pscan->callback([&] { rc = detail::cmd_period_scan(o); });

  CLI::App* spec = app.add_subcommand(
      "spectrum", "real eigenvalues of one wedge pair at one deformation");
  spec->add_option("--epsilon", o.epsilon, "deformation")
      ->required()
      ->check(CLI::NonNegativeNumber);
  spec->add_option("--k-pair", o.k_pair, "wedge pair index")->required();
  spec->add_option("--emin", o.e_min, "window lower edge (default 0)");
  spec->add_option("--emax", o.e_max, "window upper edge (default 30)");
  spec->add_option("--tol", o.tol, "relative ODE tolerance")
      ->check(CLI::NonNegativeNumber);
  add_workers(spec);
  add_output(spec);
  spec->callback([&] { rc = detail::cmd_spectrum(o); });

  CLI::App* sscan = app.add_subcommand(
      "spectrum-scan", "branch-tracked spectrum across a deformation grid");
  sscan->add_option("--k-pair", o.k_pair, "wedge pair index")->required();
  sscan->add_option("--grid", o.grid, "deformation grid start:stop:step")
      ->required();
  sscan->add_option("--emin", o.e_min, "window lower edge (default 0)");
  sscan->add_option("--emax", o.e_max, "window upper edge (default 30)");
  sscan->add_option("--tol", o.tol, "relative ODE tolerance")
      ->check(CLI::NonNegativeNumber);
  sscan->add_option("--resume", o.resume,
                    "JSON envelope of a previous scan to continue from");
  add_workers(sscan);
  add_output(sscan);
  sscan->callback([&] { rc = detail::cmd_spectrum_scan(o); });

  CLI::App* verify =
      app.add_subcommand("verify", "run the acceptance suite");
  verify->callback([&] { rc = detail::cmd_verify(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

/// Test-friendly entry point: arguments without the program name.
inline int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("ptsym");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ptsym::cli
