#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/classical/period.hpp"
#include "ptsym/geometry/wedges.hpp"
#include "ptsym/quantum/spectrum.hpp"
#include "ptsym/support/format.hpp"

namespace ptsym::acceptance {

/// Outcome of one acceptance criterion.  `indeterminate` marks the single
/// criterion whose target the available inputs do not pin down numerically
/// (the region-II hunt); it counts as not-failed and carries its scan
/// artifacts in `detail` for manual review.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool indeterminate = false;
  double seconds = 0.0;
  std::string detail;
};

inline bool all_pass(const std::vector<CriterionResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass && !r.indeterminate) return false;
  return true;
}

namespace detail {

using classical::OrbitControl;
using classical::OrbitRun;
using classical::PeriodRecord;
using num::StepControl;
using quantum::ShootingConfig;
using quantum::SpectralPoint;
using support::format_double;

/// Expensive sweeps shared between criteria, computed once on first use.
struct Cache {
  ShootingConfig qcfg;

  std::optional<std::vector<PeriodRecord>> k0, k1, k2;
  std::map<double, std::vector<SpectralPoint>> pair0;

  static std::vector<double> steps(double lo, double hi, double h) {
    std::vector<double> g;
    for (int i = 0;; ++i) {
      const double x = lo + i * h;
      if (x > hi + 0.5 * h) break;
      g.push_back(x);
    }
    return g;
  }

  const std::vector<PeriodRecord>& k0_rows() {
    if (!k0)
      k0 = classical::period_scan(0, {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0},
                                  StepControl{}, 100.0);
    return *k0;
  }
  const std::vector<PeriodRecord>& k1_rows() {
    if (!k1)
      k1 = classical::period_scan(1, steps(0.05, 0.95, 0.05), StepControl{},
                                  2000.0);
    return *k1;
  }
  const std::vector<PeriodRecord>& k2_rows() {
    if (!k2)
      k2 = classical::period_scan(2, steps(0.05, 0.45, 0.05), StepControl{},
                                  2000.0);
    return *k2;
  }
  const std::vector<SpectralPoint>& pair0_at(double eps) {
    auto it = pair0.find(eps);
    if (it == pair0.end())
      it = pair0.emplace(eps, quantum::find_real_eigenvalues(eps, 0, 0.0,
                                                             30.0, qcfg))
               .first;
    return it->second;
  }
};

inline std::string fd(double v) { return format_double(v); }

/// Real spectra match element by element within tol (and are equally long).
inline bool spectra_match(const std::vector<SpectralPoint>& a,
                          const std::vector<SpectralPoint>& b, double tol,
                          double& worst) {
  worst = 0.0;
  if (a.size() != b.size() || a.empty()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i].E.real() - b[i].E.real()));
  return worst <= tol;
}

/// Serializes period rows without the wall-time field (the one column that
/// legitimately differs between runs).
inline std::string period_rows_bytes(const std::vector<PeriodRecord>& rows) {
  std::string s;
  for (const auto& r : rows) {
    s += fd(r.epsilon);
    s += r.classification.closed ? ",1," : ",0,";
    s += fd(r.classification.period);
    s += r.classification.pt_symmetric ? ",1," : ",0,";
    s += r.classification.reached_conjugate ? "1," : "0,";
    s += fd(r.max_energy_drift);
    s += ',';
    s += classical::to_string(r.status);
    s += ',';
    s += num::to_string(r.precision);
    s += ',';
    s += r.error;
    s += '\n';
  }
  return s;
}

inline std::string scan_points_bytes(const std::vector<SpectralPoint>& pts) {
  std::string s;
  for (const auto& p : pts) {
    s += fd(p.epsilon);
    s += ',';
    s += std::to_string(p.branch_label);
    s += ',';
    s += fd(p.E.real());
    s += ',';
    s += fd(p.E.imag());
    s += ',';
    s += fd(p.residual);
    s += p.is_real ? ",1," : ",0,";
    s += p.converged ? "1," : "0,";
    s += quantum::to_string(p.status);
    s += ',';
    s += quantum::to_string(p.provenance);
    s += '\n';
  }
  return s;
}

// ---------------------------------------------------------------------------
// criterion bodies

inline CriterionResult c1_harmonic(Cache& c) {
  CriterionResult r;
  r.id = 1;
  r.title = "harmonic limit of the shooting spectra";
  const auto t0 = std::chrono::steady_clock::now();
  std::string bad;
  double worst = 0.0;
  for (int kp = 0; kp <= 2; ++kp) {
    const auto roots =
        quantum::find_real_eigenvalues(0.0, kp, 0.0, 16.2, c.qcfg);
    if (roots.size() != 8) {
      bad += " pair " + std::to_string(kp) + ": " +
             std::to_string(roots.size()) + " roots";
      continue;
    }
    for (std::size_t n = 0; n < 8; ++n)
      worst = std::max(worst,
                       std::abs(roots[n].E.real() - (2.0 * n + 1.0)));
  }
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
  r.pass = bad.empty() && worst <= 1e-6 && elapsed < 30.0;
  r.detail = bad.empty() ? "worst |E - (2n+1)| = " + fd(worst)
                         : "missing roots:" + bad;
  if (elapsed >= 30.0) r.detail += "; over the 30 s budget";
  return r;
}

inline CriterionResult c2_period_oracle(Cache& c) {
  CriterionResult r;
  r.id = 2;
  r.title = "closed-form period oracle";
  const double pi_gap = std::abs(classical::analytic_period(0.0) -
                                 geom::pi);
  double worst = 0.0;
  std::string bad;
  for (const auto& row : c.k0_rows()) {
    if (!row.classification.closed) {
      bad += " eps=" + fd(row.epsilon) + " " +
             classical::to_string(row.status);
      continue;
    }
    const double ref = classical::analytic_period(row.epsilon);
    worst = std::max(worst,
                     std::abs(row.classification.period - ref) / ref);
  }
  r.pass = bad.empty() && worst <= 1e-6 && pi_gap <= 1e-12;
  r.detail = bad.empty() ? "worst rel err " + fd(worst) +
                               ", |T(0) - pi| = " + fd(pi_gap)
                         : "not closed:" + bad;
  return r;
}

inline CriterionResult c3_energy(Cache& c) {
  CriterionResult r;
  r.id = 3;
  r.title = "energy conservation of accepted orbits";
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto* rows : {&c.k0_rows(), &c.k1_rows(), &c.k2_rows()})
    for (const auto& row : *rows)
      if (row.classification.closed) {
        worst = std::max(worst, row.max_energy_drift);
        ++n;
      }
  r.pass = n > 0 && worst <= 1e-8;
  r.detail = "max |H - 1| = " + fd(worst) + " over " + std::to_string(n) +
             " orbits";
  return r;
}

inline CriterionResult c4_transitions() {
  CriterionResult r;
  r.id = 4;
  r.title = "wedge transition deformations";
  const double tol = 1e-12;
  std::string bad;
  // One wedge's transition history is the union over turning points.
  const auto wedge_crossings = [](int K_w) {
    std::vector<geom::WedgeCrossing> all;
    for (int k = -8; k <= 8; ++k)
      for (const auto& x : geom::transition_epsilons(k, K_w))
        all.push_back(x);
    std::sort(all.begin(), all.end(),
              [](const geom::WedgeCrossing& a, const geom::WedgeCrossing& b) {
                return a.epsilon < b.epsilon;
              });
    return all;
  };
  struct Expected {
    double epsilon;
    geom::CrossingKind kind;
  };
  const auto check_wedge = [&](int K_w, const std::vector<Expected>& want) {
    const auto got = wedge_crossings(K_w);
    if (got.size() != want.size()) {
      bad += " wedge " + std::to_string(K_w) + ": " +
             std::to_string(got.size()) + " crossings, expected " +
             std::to_string(want.size());
      return;
    }
    for (std::size_t i = 0; i < want.size(); ++i)
      if (std::abs(got[i].epsilon - want[i].epsilon) > tol ||
          got[i].kind != want[i].kind)
        bad += " wedge " + std::to_string(K_w) + "[" + std::to_string(i) +
               "]=" + fd(got[i].epsilon);
  };
  check_wedge(1, {{1.0, geom::CrossingKind::exit},
                  {3.0, geom::CrossingKind::entry}});
  check_wedge(2, {{0.5, geom::CrossingKind::exit},
                  {1.5, geom::CrossingKind::entry},
                  {5.0, geom::CrossingKind::exit},
                  {7.0, geom::CrossingKind::entry}});
  for (int k = 1; k <= 6; ++k) {
    bool found = false;
    for (const auto& x : geom::transition_epsilons(k, k))
      if (x.kind == geom::CrossingKind::exit &&
          std::abs(x.epsilon - 1.0 / k) <= tol)
        found = true;
    if (!found) bad += " exit(1/" + std::to_string(k) + ")";
  }
  r.pass = bad.empty();
  r.detail = bad.empty() ? "crossing sets exact to 1e-12"
                         : "mismatch:" + bad;
  return r;
}

/// Probes the gaps between consecutive real roots for a hidden complex
/// pair; returns the first one found.
inline std::optional<quantum::complex> complex_root_between(
    const std::vector<SpectralPoint>& roots, double eps, int kp,
    const ShootingConfig& cfg) {
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const double a = roots[i].E.real();
    const double b = roots[i + 1].E.real();
    const double off = std::min(3.0, std::max(0.5, 0.3 * (b - a)));
    const auto pt = quantum::find_eigenvalue_complex(
        eps, kp, quantum::complex{0.5 * (a + b), off}, cfg);
    if (pt.converged && !pt.is_real && std::abs(pt.E) < cfg.divergence_cap &&
        pt.E.real() > 0.0 && pt.E.real() < 30.0)
      return pt.E;
  }
  return std::nullopt;
}

inline CriterionResult c5_pair1_phases(Cache& c) {
  CriterionResult r;
  r.id = 5;
  r.title = "pair-1 spectral phase structure";
  std::string bad;
  const auto at2 = quantum::find_real_eigenvalues(2.0, 1, 0.0, 30.0, c.qcfg);
  if (!at2.empty()) bad += " eps=2 expected empty, got " +
                           std::to_string(at2.size());
  const auto at35 =
      quantum::find_real_eigenvalues(3.5, 1, 0.0, 30.0, c.qcfg);
  if (at35.empty()) bad += " eps=3.5 expected >= 1 real root";
  const auto at4 = quantum::find_real_eigenvalues(4.0, 1, 0.0, 30.0, c.qcfg);
  double worst4 = 0.0;
  if (!spectra_match(at4, c.pair0_at(4.0), 1e-4, worst4))
    bad += " eps=4 pair-0 mismatch (worst " + fd(worst4) + ")";
  const auto at6 = quantum::find_real_eigenvalues(6.0, 1, 0.0, 30.0, c.qcfg);
  if (at6.empty()) {
    bad += " eps=6 expected real roots";
  } else if (const auto hidden =
                 complex_root_between(at6, 6.0, 1, c.qcfg)) {
    bad += " eps=6 complex pair at (" + fd(hidden->real()) + ", " +
           fd(hidden->imag()) + ")";
  }
  r.pass = bad.empty();
  r.detail = bad.empty()
                 ? "0 at eps=2, " + std::to_string(at35.size()) +
                       " at eps=3.5, pair-0 match " + fd(worst4) +
                       " at eps=4, " + std::to_string(at6.size()) +
                       " real at eps=6"
                 : bad;
  return r;
}

inline CriterionResult c6_monotone_periods(Cache& c) {
  CriterionResult r;
  r.id = 6;
  r.title = "region-I period monotonicity";
  std::string bad;
  auto check = [&](const std::vector<PeriodRecord>& rows, const char* name) {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
      if (!row.classification.closed || !row.classification.pt_symmetric) {
        bad += std::string(" ") + name + " eps=" + fd(row.epsilon) +
               (row.classification.closed ? " not pt-symmetric"
                                          : " not closed");
        return;
      }
      if (!(row.classification.period < prev)) {
        bad += std::string(" ") + name + " eps=" + fd(row.epsilon) +
               " period not decreasing";
        return;
      }
      prev = row.classification.period;
    }
  };
  check(c.k1_rows(), "K=1");
  check(c.k2_rows(), "K=2");
  r.pass = bad.empty();
  r.detail = bad.empty() ? "both families strictly decreasing, all "
                           "pt-symmetric"
                         : bad;
  return r;
}

inline CriterionResult c7_pair2_phases(Cache& c) {
  CriterionResult r;
  r.id = 7;
  r.title = "pair-2 spectral phase structure";
  std::string bad;
  for (const double eps : {1.0, 6.0}) {
    const auto rows =
        quantum::find_real_eigenvalues(eps, 2, 0.0, 30.0, c.qcfg);
    if (!rows.empty())
      bad += " eps=" + fd(eps) + " expected empty, got " +
             std::to_string(rows.size());
  }
  std::string matches;
  for (const double eps : {2.0, 4.0, 8.0}) {
    const auto rows =
        quantum::find_real_eigenvalues(eps, 2, 0.0, 30.0, c.qcfg);
    double worst = 0.0;
    if (!spectra_match(rows, c.pair0_at(eps), 1e-4, worst))
      bad += " eps=" + fd(eps) + " pair-0 mismatch (worst " + fd(worst) +
             ")";
    else
      matches += " " + fd(worst);
  }
  r.pass = bad.empty();
  r.detail = bad.empty() ? "empty at eps=1,6; pair-0 gaps" + matches : bad;
  return r;
}

inline CriterionResult c8_runaway_branch(Cache& c) {
  CriterionResult r;
  r.id = 8;
  r.title = "ground-branch runaway detection";
  const auto scan = quantum::spectrum_scan(1, Cache::steps(0.0, 1.05, 0.05),
                                           0.0, 30.0, c.qcfg, 1);
  std::map<double, double> ground;
  double flagged_at = std::numeric_limits<double>::quiet_NaN();
  for (const auto& p : scan.points) {
    if (p.branch_label != 0) continue;
    if (p.status == quantum::PointStatus::ok && p.is_real)
      ground[p.epsilon] = p.E.real();
    if (p.status == quantum::PointStatus::diverged)
      flagged_at = p.epsilon;
  }
  // Grid values are accumulated, so 0.7 arrives as 0.7 + one ulp.
  const auto ground_at = [&](double eps) -> std::optional<double> {
    for (const auto& [key, e] : ground)
      if (std::abs(key - eps) < 1e-9) return e;
    return std::nullopt;
  };
  bool increasing = true;
  double prev = -std::numeric_limits<double>::infinity();
  std::string values;
  for (const double eps : {0.7, 0.8, 0.9}) {
    const auto e = ground_at(eps);
    if (!e || !std::isfinite(*e)) {
      increasing = false;
      break;
    }
    increasing = increasing && *e > prev;
    prev = *e;
    values += " " + fd(*e);
  }
  bool diverged = false;
  for (const auto& b : scan.branches)
    if (b.label == 0)
      diverged = b.retired && b.retired_as == quantum::PointStatus::diverged;
  r.pass = increasing && diverged && std::isfinite(flagged_at) &&
           flagged_at < 1.05 + 1e-12;
  r.detail = "ground" + values + "; divergence flag at eps=" +
             fd(flagged_at);
  return r;
}

inline bool almost(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool almost(std::complex<double> a, std::complex<double> b,
                   double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline CriterionResult c9_properties(Cache& c) {
  CriterionResult r;
  r.id = 9;
  r.title = "property suite";
  std::string bad;

  // Conjugation symmetry of the matching determinant.
  {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> re(0.5, 25.0), im(-6.0, 6.0);
    for (int i = 0; i < 20; ++i) {
      const quantum::complex E{re(rng), im(rng)};
      const auto a = quantum::matching(E, 1.3, 1, c.qcfg);
      const auto b = quantum::matching(std::conj(E), 1.3, 1, c.qcfg);
      if (!a.ok || !b.ok || !almost(b.D, std::conj(a.D), 1e-11)) {
        bad += " D-conjugation at E=(" + fd(E.real()) + "," + fd(E.imag()) +
               ")";
        break;
      }
    }
  }

  // The zero set must not depend on how the boundary seeds are scaled.
  {
    auto base = quantum::find_real_eigenvalues(1.0, 0, 0.0, 12.0, c.qcfg);
    ShootingConfig scaled = c.qcfg;
    scaled.left_seed_scale = {2.5, 1.3};
    scaled.right_seed_scale = {0.4, -0.7};
    auto moved = quantum::find_real_eigenvalues(1.0, 0, 0.0, 12.0, scaled);
    double worst = 0.0;
    if (!spectra_match(base, moved, 1e-8, worst))
      bad += " seed-scale zero set moved by " + fd(worst);
  }

  // Antilinear mirror equivariance of the flow field: with y = -conj(x) on
  // the sheet of opposite phase and q = conj(p), the field must satisfy
  // dy = conj(dx), dq = -conj(dp), dphase unchanged, H -> conj(H).
  {
    std::mt19937 rng(54321);
    std::uniform_real_distribution<double> rad(0.3, 2.0),
        ang(-3.0 * geom::pi, 3.0 * geom::pi), mom(-2.0, 2.0);
    for (const double eps : {0.0, 0.3, 1.0, 2.4, 4.0}) {
      for (int i = 0; i < 50 && bad.empty(); ++i) {
        classical::PhaseState s;
        const double theta = ang(rng);
        s.position.value = std::polar(rad(rng), theta);
        s.position.phase = theta + geom::pi / 2.0;
        s.momentum = {mom(rng), mom(rng)};
        classical::PhaseState m;
        m.position.value = -std::conj(s.position.value);
        m.position.phase = -s.position.phase;
        m.momentum = std::conj(s.momentum);
        const auto d1 = classical::hamilton_rhs(s, eps);
        const auto d2 = classical::hamilton_rhs(m, eps);
        if (!almost(d2.dx, std::conj(d1.dx), 5e-13) ||
            !almost(d2.dp, -std::conj(d1.dp), 5e-13) ||
            !almost(d2.dphase, d1.dphase, 5e-13) ||
            !almost(classical::energy(m, eps),
                    std::conj(classical::energy(s, eps)), 5e-13))
          bad += " flow equivariance at eps=" + fd(eps);
      }
    }
  }

  // Turning points solve 1 + (i x)^(2+eps) = 0 on their sheet.
  for (int k = -4; k <= 4 && bad.empty(); ++k)
    for (const double eps : {0.0, 0.3, 2.4, 4.0}) {
      const auto tp = geom::turning_point(k, eps);
      const double res = std::abs(
          1.0 + std::polar(1.0, (2.0 + eps) * (tp.theta + geom::pi / 2.0)));
      if (res > 1e-12 || tp.residual > 1e-12) {
        bad += " turning-point residual K=" + std::to_string(k) +
               " eps=" + fd(eps);
        break;
      }
    }

  // Worker count must not change a single output byte.
  {
    const auto grid = Cache::steps(0.0, 2.0, 0.25);
    const auto p1 = classical::period_scan(0, grid, StepControl{}, 100.0,
                                           OrbitControl{}, 1);
    const auto p8 = classical::period_scan(0, grid, StepControl{}, 100.0,
                                           OrbitControl{}, 8);
    if (period_rows_bytes(p1) != period_rows_bytes(p8))
      bad += " period-scan rows differ across worker counts";
    const auto s1 = quantum::spectrum_scan(0, {0.0, 0.1, 0.2}, 0.0, 10.0,
                                           c.qcfg, 1);
    const auto s3 = quantum::spectrum_scan(0, {0.0, 0.1, 0.2}, 0.0, 10.0,
                                           c.qcfg, 3);
    if (scan_points_bytes(s1.points) != scan_points_bytes(s3.points))
      bad += " spectrum-scan rows differ across worker counts";
  }

  r.pass = bad.empty();
  r.detail = bad.empty() ? "conjugation, seed scaling, flow equivariance, "
                           "turning points, worker determinism"
                         : bad;
  return r;
}

inline CriterionResult c10_region_two_hunt() {
  CriterionResult r;
  r.id = 10;
  r.title = "region-II broken-orbit hunt";
  const auto candidates = classical::broken_candidates(6, 9, 1.0, 4.0);
  StepControl base;
  base.rel_tol = 1e-11;
  base.abs_tol = 1e-13;
  const auto rungs = classical::escalation_rungs(base);

  int broken = 0;
  std::string artifacts;
  for (const auto& cand : candidates) {
    StepControl ctrl = base;
    OrbitControl oc;
    OrbitRun run = classical::integrate_orbit(1, cand.epsilon, ctrl, 2000.0,
                                              oc);
    for (std::size_t i = 1;
         i < rungs.size() && run.classification.closed &&
         run.trajectory.max_energy_drift > 1e-8;
         ++i) {
      StepControl cc = base;
      cc.rel_tol = rungs[i].rel_tol;
      cc.abs_tol = rungs[i].abs_tol;
      OrbitControl oo;
      oo.precision = rungs[i].precision;
      const OrbitRun next =
          classical::integrate_orbit(1, cand.epsilon, cc, 2000.0, oo);
      if (!next.classification.closed) break;
      run = next;
      ctrl = cc;
      oc = oo;
    }

    std::string note;
    bool reported = run.classification.closed;
    if (reported && run.trajectory.max_energy_drift > 1e-8) {
      note = " drift-excluded";
      reported = false;
    }
    if (reported) {
      StepControl half = ctrl;
      half.rel_tol *= 0.5;
      half.abs_tol *= 0.5;
      const OrbitRun again =
          classical::integrate_orbit(1, cand.epsilon, half, 2000.0, oc);
      const double shift =
          again.classification.closed
              ? std::abs(again.classification.period -
                         run.classification.period) /
                    run.classification.period
              : std::numeric_limits<double>::infinity();
      if (shift > 1e-4) {
        note = " unstable(" + fd(shift) + ")";
        reported = false;
      }
    }
    if (reported && !run.classification.pt_symmetric &&
        run.classification.reached_conjugate)
      ++broken;

    artifacts += "  eps=" + std::to_string(cand.num) + "/" +
                 std::to_string(cand.den) + " closed=" +
                 (run.classification.closed ? "1" : "0") + " pt=" +
                 (run.classification.pt_symmetric ? "1" : "0") + " conj=" +
                 (run.classification.reached_conjugate ? "1" : "0") +
                 " period=" + fd(run.classification.period) + " drift=" +
                 fd(run.trajectory.max_energy_drift) + " status=" +
                 classical::to_string(run.trajectory.status) + note + "\n";
  }

  if (broken > 0) {
    r.pass = true;
    r.detail = std::to_string(broken) +
               " stable mirror-broken orbits among " +
               std::to_string(candidates.size()) + " candidates";
  } else {
    r.indeterminate = true;
    r.detail = "no mirror-broken orbit on the candidate grid; artifacts:\n" +
               artifacts;
  }
  return r;
}

}  // namespace detail

/// Runs every acceptance criterion, streaming one progress line per
/// criterion, and returns the results ordered by id.  Criteria 2/6 feed
/// criterion 3, so the execution order differs from the report order.
inline std::vector<CriterionResult> run_all(std::ostream& progress) {
  detail::Cache cache;
  std::vector<CriterionResult> out;
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    progress << "criterion " << r.id << " "
             << (r.pass ? "PASS" : r.indeterminate ? "INDETERMINATE"
                                                   : "FAIL")
             << " (" << detail::fd(r.seconds) << " s) " << r.title << ": "
             << r.detail << "\n";
    progress.flush();
    out.push_back(std::move(r));
  };

  timed([&] { return detail::c1_harmonic(cache); });
  timed([&] { return detail::c2_period_oracle(cache); });
  timed([&] { return detail::c6_monotone_periods(cache); });
  timed([&] { return detail::c3_energy(cache); });
  timed([&] { return detail::c4_transitions(); });
  timed([&] { return detail::c5_pair1_phases(cache); });
  timed([&] { return detail::c7_pair2_phases(cache); });
  timed([&] { return detail::c8_runaway_branch(cache); });
  timed([&] { return detail::c9_properties(cache); });
  timed([&] { return detail::c10_region_two_hunt(); });

  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) {
              return a.id < b.id;
            });
  return out;
}

}  // namespace ptsym::acceptance
