#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptsym/classical/orbit.hpp"
#include "ptsym/numerics/gamma.hpp"
#include "ptsym/support/parallel.hpp"

namespace ptsym::classical {

/// Closed form for the period of the symmetric orbit pair (K = 0 paired
/// with K = -1) at deformation eps:
///
///   T = 2 sqrt(pi) Gamma((3+eps)/(2+eps)) / Gamma((4+eps)/(4+2 eps))
///       * cos(eps pi / (4 + 2 eps)).
///
/// Reduces to T = pi at eps = 0 (the harmonic oscillator at energy 1).
inline double analytic_period(double eps) {
  if (!(eps >= 0.0))
    throw std::invalid_argument("analytic_period: epsilon must be >= 0");
  const double num = num::gamma_real((3.0 + eps) / (2.0 + eps));
  const double den = num::gamma_real((4.0 + eps) / (4.0 + 2.0 * eps));
  return 2.0 * std::sqrt(std::numbers::pi) * (num / den) *
         std::cos(eps * std::numbers::pi / (4.0 + 2.0 * eps));
}

/// One rung of the precision-escalation ladder.
struct PrecisionRung {
  num::Precision precision = num::Precision::f64;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
};

/// The ladder climbed by integrate_orbit_auto: the caller's tolerances in
/// double first, then pinned tighter tolerances in extended and (when the
/// toolchain has it) quad precision.  Orbits launched near the end of their
/// region amplify local error by exp(lambda T); each rung buys roughly four
/// more usable digits against that amplification.
inline std::vector<PrecisionRung> escalation_rungs(
    const num::StepControl& ctrl) {
  std::vector<PrecisionRung> rungs{
      {num::Precision::f64, ctrl.rel_tol, ctrl.abs_tol},
      {num::Precision::f80, 1e-15, 1e-17},
      {num::Precision::f80, 1e-17, 1e-19},
  };
  if (num::float128_available)
    rungs.push_back({num::Precision::f128, 1e-19, 1e-21});
  return rungs;
}

/// Integrates one orbit, escalating working precision deterministically
/// until the trajectory closes with max energy drift at or below
/// drift_goal.  Drift scales about linearly with the relative tolerance,
/// so after a closed-but-drifty run the ladder jumps straight to the first
/// rung whose predicted drift clears the goal with margin instead of
/// climbing one rung at a time.  A run that fails to close is retried on
/// the wider extended-precision rungs (near a region boundary, closure
/// failures, step underflow, and state blow-up are almost always the local
/// error amplified by exp(lambda T)) but never in quad: an orbit that is
/// genuinely open would then burn the full horizon at software-float
/// speed.  Origin passages are returned as-is since no amount of precision
/// cures a trajectory that reaches the branch point.  drift_goal <= 0
/// disables the ladder entirely.
inline OrbitRun integrate_orbit_auto(int K, double eps,
                                     const num::StepControl& ctrl,
                                     double t_max, const OrbitControl& oc = {},
                                     double drift_goal = 1e-8) {
  const std::vector<PrecisionRung> rungs = escalation_rungs(ctrl);
  const auto retryable = [](OrbitStatus s) {
    return s == OrbitStatus::no_closure || s == OrbitStatus::step_underflow ||
           s == OrbitStatus::non_finite;
  };
  OrbitRun run;
  OrbitRun best;
  bool have_best = false;
  std::size_t i = 0;
  while (i < rungs.size()) {
    num::StepControl c = ctrl;
    c.rel_tol = rungs[i].rel_tol;
    c.abs_tol = rungs[i].abs_tol;
    OrbitControl o = oc;
    o.precision = rungs[i].precision;
    run = integrate_orbit(K, eps, c, t_max, o);
    if (drift_goal <= 0.0) return run;
    if (run.classification.closed) {
      const double drift = run.trajectory.max_energy_drift;
      if (drift <= drift_goal) return run;
      if (!have_best || drift < best.trajectory.max_energy_drift) {
        best = run;
        have_best = true;
      }
      std::size_t next = i + 1;
      while (next + 1 < rungs.size() &&
             drift * (rungs[next].rel_tol / rungs[i].rel_tol) >
                 0.5 * drift_goal)
        ++next;
      i = next;
    } else {
      if (!retryable(run.trajectory.status)) return run;
      if (i + 1 >= rungs.size() ||
          rungs[i + 1].precision == num::Precision::f128)
        break;
      ++i;
    }
  }
  // The ladder ran out; hand back the best closed run seen, if any beat
  // the final attempt.
  if (have_best &&
      (!run.classification.closed ||
       best.trajectory.max_energy_drift < run.trajectory.max_energy_drift))
    return best;
  return run;
}

/// One row of a period scan.
struct PeriodRecord {
  double epsilon = 0.0;
  int K = 0;
  OrbitClassification classification;
  double max_energy_drift = 0.0;
  OrbitStatus status = OrbitStatus::no_closure;
  num::Precision precision = num::Precision::f64;
  double wall_time_s = 0.0;
  std::string error;  ///< non-empty when the row failed outright
};

/// Integrates the K-orbit for every deformation in the grid.  Rows are
/// produced in grid order regardless of worker count, and failures are
/// captured per row instead of aborting the scan.  Each row climbs the
/// precision ladder as needed; pass drift_goal <= 0 to run exactly the
/// given control settings instead.
inline std::vector<PeriodRecord> period_scan(int K,
                                             const std::vector<double>& grid,
                                             const num::StepControl& ctrl,
                                             double t_max,
                                             const OrbitControl& oc = {},
                                             unsigned workers = 1,
                                             double drift_goal = 1e-8) {
  std::vector<PeriodRecord> rows(grid.size());
  support::parallel_for(grid.size(), workers, [&](std::size_t i) {
    PeriodRecord& r = rows[i];
    r.epsilon = grid[i];
    r.K = K;
    const auto tic = std::chrono::steady_clock::now();
    try {
      OrbitRun run =
          integrate_orbit_auto(K, grid[i], ctrl, t_max, oc, drift_goal);
      r.classification = std::move(run.classification);
      r.max_energy_drift = run.trajectory.max_energy_drift;
      r.status = run.trajectory.status;
      r.precision = run.precision;
    } catch (const std::exception& ex) {
      r.error = ex.what();
      r.status = OrbitStatus::non_finite;
    }
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic)
            .count();
  });
  return rows;
}

/// Candidate deformations for symmetry-broken closed orbits: rationals
/// n/d in (lo, hi) whose lowest-terms numerator is a multiple of 4 and
/// whose denominator is odd, enumerated up to n = 4 p_max and d = q_max.
struct BrokenCandidate {
  long num = 0;
  long den = 1;
  double epsilon = 0.0;
};

inline std::vector<BrokenCandidate> broken_candidates(long p_max = 6,
                                                      long q_max = 9,
                                                      double lo = 1.0,
                                                      double hi = 4.0) {
  std::vector<BrokenCandidate> out;
  for (long p = 1; p <= p_max; ++p) {
    for (long q = 1; q <= q_max; q += 2) {
      long n = 4 * p, d = q;
      const long g = std::gcd(n, d);
      n /= g;
      d /= g;
      if (n % 4 != 0) continue;  // reduction must keep the factor of 4
      const double value = static_cast<double>(n) / static_cast<double>(d);
      if (!(value > lo && value < hi)) continue;
      bool seen = false;
      for (const auto& c : out)
        if (c.num == n && c.den == d) {
          seen = true;
          break;
        }
      if (!seen) out.push_back({n, d, value});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BrokenCandidate& a, const BrokenCandidate& b) {
              return a.epsilon < b.epsilon;
            });
  return out;
}

}  // namespace ptsym::classical
