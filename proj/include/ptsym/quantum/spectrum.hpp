#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptsym/numerics/roots.hpp"
#include "ptsym/quantum/shooting.hpp"
#include "ptsym/support/parallel.hpp"

namespace ptsym::quantum {

enum class PointStatus { ok, diverged, lost, empty, degenerate };
enum class Provenance { fresh_scan, continuation, coalescence, manual };

inline const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::diverged: return "diverged";
    case PointStatus::lost: return "lost";
    case PointStatus::empty: return "empty";
    case PointStatus::degenerate: return "degenerate";
  }
  return "unknown";
}
inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::fresh_scan: return "fresh_scan";
    case Provenance::continuation: return "continuation";
    case Provenance::coalescence: return "coalescence";
    case Provenance::manual: return "manual";
  }
  return "unknown";
}

/// One eigenvalue record.  branch_label ties records of the same spectral
/// branch together across a deformation scan; for a single real-axis scan
/// it is simply the index in ascending order of Re E.
struct SpectralPoint {
  double epsilon = 0.0;
  int K_pair = 0;
  complex E{};
  double residual = std::numeric_limits<double>::quiet_NaN();
  int branch_label = -1;
  bool is_real = false;
  bool converged = false;
  PointStatus status = PointStatus::ok;
  Provenance provenance = Provenance::fresh_scan;
};

inline bool is_real_eigenvalue(complex E, const ShootingConfig& cfg) {
  return std::abs(E.imag()) <= cfg.im_tol_scale * (1.0 + std::abs(E));
}

namespace detail {

/// Phase that rotates the sampled determinant values onto (approximately)
/// the real axis: alpha = arg(sum (D/|D|)^2) / 2.  The determinant is real
/// on real E by conjugation symmetry, so alpha mops up only the residual
/// numerical phase and the overall sign convention.
inline double axis_alignment(const std::vector<complex>& ds) {
  complex acc{0.0, 0.0};
  for (const complex& d : ds) {
    const double m = std::abs(d);
    if (m > 0.0 && std::isfinite(m)) {
      const complex u = d / m;
      acc += u * u;
    }
  }
  if (std::abs(acc) == 0.0) return 0.0;
  return 0.5 * std::arg(acc);
}

/// Shared r_max for a whole scan window: the rule evaluated at the largest
/// energy magnitude the scan will touch, taken over both rays.
inline double window_r_max(double eps, int K_pair, double e_abs_max,
                           const ShootingConfig& cfg) {
  const complex e_ref{e_abs_max, 0.0};
  return std::max(
      choose_r_max(ray_angle(K_pair, eps), e_ref, eps, cfg),
      choose_r_max(ray_angle(geom::pt_partner(K_pair), eps), e_ref, eps,
                   cfg));
}

}  // namespace detail

/// Scans D(E) over a real window, brackets the sign changes of the aligned
/// real part, refines each by Brent's method and polishes in the complex
/// plane.  Returned points are validated (residual below match_tol, within
/// the real-axis tube), deduplicated and sorted by Re E; labels are the
/// sorted indices.
inline std::vector<SpectralPoint> find_real_eigenvalues(
    double eps, int K_pair, double e_lo, double e_hi,
    const ShootingConfig& cfg, unsigned workers = 1) {
  if (!(e_lo < e_hi))
    throw std::invalid_argument("find_real_eigenvalues: need e_lo < e_hi");
  if (!(cfg.e_grid_step > 0.0))
    throw std::invalid_argument("find_real_eigenvalues: e_grid_step must be positive");
  // With coinciding rays D vanishes identically; any sign structure in the
  // samples is rounding noise, so the only defensible answer is "no
  // isolated real roots".
  if (pair_rays_degenerate(K_pair, eps)) return {};

  ShootingConfig local = cfg;
  if (local.r_max_override <= 0.0)
    local.r_max_override = detail::window_r_max(
        eps, K_pair, std::max(std::abs(e_lo), std::abs(e_hi)), cfg);

  std::vector<double> es;
  for (double e = e_lo + 0.5 * cfg.e_grid_step; e < e_hi;
       e += cfg.e_grid_step)
    es.push_back(e);
  if (es.size() < 2) {
    es.clear();
    es.push_back(e_lo + 0.25 * (e_hi - e_lo));
    es.push_back(e_lo + 0.75 * (e_hi - e_lo));
  }

  std::vector<complex> ds(es.size());
  std::vector<char> ok(es.size(), 0);
  support::parallel_for(es.size(), workers, [&](std::size_t i) {
    const MatchingResult m =
        matching(complex{es[i], 0.0}, eps, K_pair, local);
    ds[i] = m.D;
    ok[i] = m.ok ? 1 : 0;
  });

  std::vector<complex> good;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ok[i]) good.push_back(ds[i]);
  const double alpha = detail::axis_alignment(good);
  const complex rot = std::polar(1.0, -alpha);

  auto f = [&](double e) {
    const MatchingResult m = matching(complex{e, 0.0}, eps, K_pair, local);
    if (!m.ok) return std::numeric_limits<double>::quiet_NaN();
    return std::real(rot * m.D);
  };
  auto dfull = [&](complex e) {
    const MatchingResult m = matching(e, eps, K_pair, local);
    if (!m.ok)
      return complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    return m.D;
  };

  std::vector<SpectralPoint> found;
  for (std::size_t i = 0; i + 1 < es.size(); ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    const double fa = std::real(rot * ds[i]);
    const double fb = std::real(rot * ds[i + 1]);
    if (fa == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;

    num::RootBracket br{es[i], es[i + 1], fa, fb};
    double e_root;
    try {
      e_root = num::find_root_bracketed(f, br, 1e-11 * (1.0 + es[i + 1]));
    } catch (const std::exception&) {
      continue;
    }
    const num::ComplexRootResult pol =
        num::find_root_complex(dfull, complex{e_root, 0.0}, local.root_tol);
    SpectralPoint pt;
    pt.epsilon = eps;
    pt.K_pair = K_pair;
    if (pol.converged && is_real_eigenvalue(pol.root, local)) {
      pt.E = pol.root;
      pt.residual = pol.residual;
      pt.converged = true;
    } else {
      const double fr = f(e_root);
      const MatchingResult m =
          matching(complex{e_root, 0.0}, eps, K_pair, local);
      if (!m.ok || !(std::abs(m.D) <= local.match_tol)) continue;
      pt.E = complex{e_root, 0.0};
      pt.residual = std::abs(m.D);
      pt.converged = std::isfinite(fr);
    }
    if (!(pt.residual <= local.match_tol)) continue;
    if (pt.E.real() < e_lo || pt.E.real() > e_hi) continue;
    pt.is_real = true;
    found.push_back(pt);
  }

  std::sort(found.begin(), found.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) {
              return a.E.real() < b.E.real();
            });
  std::vector<SpectralPoint> out;
  for (const SpectralPoint& p : found) {
    if (!out.empty() &&
        std::abs(p.E.real() - out.back().E.real()) <=
            1e-7 * (1.0 + std::abs(p.E.real())))
      continue;
    out.push_back(p);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].branch_label = static_cast<int>(i);
  return out;
}

/// Polishes a single (possibly complex) eigenvalue from a caller-supplied
/// guess.  The shooting radius is frozen from the guess magnitude so the
/// determinant stays smooth during the iteration; if the root wanders far
/// beyond that basis the radius is rebuilt once and the polish repeated.
inline SpectralPoint find_eigenvalue_complex(double eps, int K_pair,
                                             complex guess,
                                             const ShootingConfig& cfg) {
  SpectralPoint pt;
  pt.epsilon = eps;
  pt.K_pair = K_pair;
  pt.provenance = Provenance::manual;
  if (pair_rays_degenerate(K_pair, eps)) {
    // D vanishes identically here, so every guess would "converge".
    pt.E = guess;
    pt.status = PointStatus::degenerate;
    return pt;
  }

  complex basis_e{std::abs(guess) + 5.0, 0.0};
  for (int pass = 0; pass < 2; ++pass) {
    ShootingConfig local = cfg;
    if (local.r_max_override <= 0.0)
      local.r_max_override =
          detail::window_r_max(eps, K_pair, std::abs(basis_e), cfg);
    auto dfull = [&](complex e) {
      const MatchingResult m = matching(e, eps, K_pair, local);
      if (!m.ok)
        return complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
      return m.D;
    };
    const num::ComplexRootResult res =
        num::find_root_complex(dfull, guess, cfg.root_tol, 80);
    pt.E = res.root;
    pt.residual = res.residual;
    pt.converged = res.converged && res.residual <= cfg.match_tol;
    pt.is_real = is_real_eigenvalue(pt.E, cfg);
    if (!pt.converged) break;
    if (std::abs(pt.E) <= 1.25 * std::abs(basis_e) ||
        cfg.r_max_override > 0.0)
      break;
    basis_e = complex{std::abs(pt.E) + 5.0, 0.0};
    guess = pt.E;
  }
  return pt;
}

/// State carried along one spectral branch of a deformation scan.
struct BranchSeed {
  int label = 0;
  complex E{};
  bool is_real = true;
};

struct ScanBranch {
  int label = -1;
  bool is_real = true;
  bool retired = false;
  PointStatus retired_as = PointStatus::ok;
  double eps_prev = std::numeric_limits<double>::quiet_NaN();
  double eps_last = std::numeric_limits<double>::quiet_NaN();
  complex e_prev{};
  complex e_last{};
  int fail_count = 0;

  complex extrapolate(double eps_next) const {
    if (!std::isfinite(eps_prev) || eps_last == eps_prev) return e_last;
    const double de = eps_last - eps_prev;
    if (de == 0.0) return e_last;
    return e_last + (e_last - e_prev) * ((eps_next - eps_last) / de);
  }
  void push(double eps, complex e) {
    eps_prev = eps_last;
    e_prev = e_last;
    eps_last = eps;
    e_last = e;
  }
};

struct ScanResult {
  std::vector<SpectralPoint> points;
  std::vector<ScanBranch> branches;
};

namespace detail {

/// Walks the aligned real determinant along a ladder from e_start toward
/// higher energies (direction +1) or lower (-1), looking for a sign change.
/// Used when a branch loses its root: either the root moved fast (runaway
/// ground state) and is recaptured, or nothing is found up to the cap and
/// the branch is declared divergent.
inline std::optional<double> chase_real_root(
    double eps, int K_pair, const ShootingConfig& cfg, double e_start,
    int direction, double e_stop) {
  ShootingConfig local = cfg;
  if (local.r_max_override <= 0.0)
    local.r_max_override = window_r_max(
        eps, K_pair,
        std::max(std::abs(e_start), std::abs(e_stop)) + 1.0, cfg);
  auto fD = [&](double e) -> std::optional<complex> {
    const MatchingResult m = matching(complex{e, 0.0}, eps, K_pair, local);
    if (!m.ok) return std::nullopt;
    return m.D;
  };
  const auto d0 = fD(e_start);
  if (!d0) return std::nullopt;
  const double alpha = 0.5 * std::arg((*d0) * (*d0));
  const complex rot = std::polar(1.0, -alpha);
  double e_a = e_start;
  double f_a = std::real(rot * (*d0));
  double f_peak = std::abs(f_a);
  while ((direction > 0) ? (e_a < e_stop) : (e_a > e_stop)) {
    const double h =
        std::max(cfg.e_grid_step, 0.04 * (1.0 + std::abs(e_a)));
    double e_b = e_a + direction * h;
    if ((direction > 0) ? (e_b > e_stop) : (e_b < e_stop)) e_b = e_stop;
    if (e_b == e_a) break;
    const auto db = fD(e_b);
    if (!db) return std::nullopt;
    const double f_b = std::real(rot * (*db));
    f_peak = std::max(f_peak, std::abs(f_b));
    if (f_a != 0.0 && (f_a < 0.0) != (f_b < 0.0)) {
      // A determinant that decays away from the axis eventually reaches the
      // floating-point floor, where rounding noise flips the sign at random.
      // A genuine simple zero flips the sign while |D| is still of the local
      // scale, so flanks many orders below the walk's running peak mean
      // there is nothing measurable out here.
      if (std::max(std::abs(f_a), std::abs(f_b)) < 1e-9 * f_peak)
        return std::nullopt;
      auto f = [&](double e) {
        const auto d = fD(e);
        return d ? std::real(rot * (*d))
                 : std::numeric_limits<double>::quiet_NaN();
      };
      num::RootBracket br{std::min(e_a, e_b), std::max(e_a, e_b),
                          (e_a < e_b) ? f_a : f_b, (e_a < e_b) ? f_b : f_a};
      try {
        return num::find_root_bracketed(f, br, 1e-10 * (1.0 + std::abs(e_b)));
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    e_a = e_b;
    f_a = f_b;
  }
  return std::nullopt;
}

}  // namespace detail

/// Tracks every spectral branch of pair K_pair across an ascending
/// deformation grid.  Each grid point first gets an independent real-axis
/// scan of the window (phase 1, parallel); branches are then stitched
/// sequentially: real branches continue onto matching fresh roots, lose
/// their partner pairwise into complex-conjugate pairs (coalescence),
/// reappear on the axis when a complex pair pinches back, and are retired
/// as divergent when the root runs away above the cap, or as lost when it
/// cannot be followed at all.  New fresh roots spawn new labels.
///
/// The grid must start at 0 (where labels seed as the ascending index) or
/// be accompanied by explicit seeds.
inline ScanResult spectrum_scan(int K_pair, const std::vector<double>& grid,
                                double e_lo, double e_hi,
                                const ShootingConfig& cfg,
                                unsigned workers = 1,
                                const std::vector<BranchSeed>& seeds = {}) {
  if (grid.empty())
    throw std::invalid_argument("spectrum_scan: empty deformation grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("spectrum_scan: grid must be ascending");
  if (grid.front() != 0.0 && seeds.empty())
    throw std::invalid_argument(
        "spectrum_scan: grid must start at 0 unless branch seeds are given");

  // Phase 1: independent real scans, one per grid point.
  std::vector<std::vector<SpectralPoint>> fresh(grid.size());
  support::parallel_for(grid.size(), workers, [&](std::size_t i) {
    fresh[i] = find_real_eigenvalues(grid[i], K_pair, e_lo, e_hi, cfg, 1);
  });

  ScanResult result;
  std::vector<ScanBranch> branches;
  int next_label = 0;
  const double im_offset_floor = std::max(cfg.e_grid_step, 1e-3);

  if (!seeds.empty()) {
    for (const BranchSeed& s : seeds) {
      ScanBranch b;
      b.label = s.label;
      b.is_real = s.is_real;
      b.push(grid.front() - 1.0, s.E);  // placeholder abscissa; replaced below
      branches.push_back(b);
      next_label = std::max(next_label, s.label + 1);
    }
  }

  auto emit = [&](double eps, const ScanBranch& b, complex E, double residual,
                  bool converged, PointStatus status, Provenance prov) {
    SpectralPoint pt;
    pt.epsilon = eps;
    pt.K_pair = K_pair;
    pt.E = E;
    pt.residual = residual;
    pt.branch_label = b.label;
    pt.is_real = is_real_eigenvalue(E, cfg);
    pt.converged = converged;
    pt.status = status;
    pt.provenance = prov;
    result.points.push_back(pt);
  };

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double eps = grid[gi];
    if (pair_rays_degenerate(K_pair, eps)) {
      // Coinciding rays: D vanishes identically and nothing can be
      // measured at this grid point.  Branches coast through untouched
      // and pick up again at the next point.
      SpectralPoint pt;
      pt.epsilon = eps;
      pt.K_pair = K_pair;
      pt.status = PointStatus::degenerate;
      pt.provenance = Provenance::fresh_scan;
      result.points.push_back(pt);
      continue;
    }
    std::vector<SpectralPoint>& roots = fresh[gi];
    std::vector<char> claimed(roots.size(), 0);
    const std::size_t points_before = result.points.size();

    // Continue existing branches in label order.
    std::vector<std::size_t> active;
    for (std::size_t bi = 0; bi < branches.size(); ++bi)
      if (!branches[bi].retired) active.push_back(bi);

    std::vector<std::size_t> unmatched_real;
    for (const std::size_t bi : active) {
      ScanBranch& b = branches[bi];
      if (!b.is_real) continue;
      const complex pred = b.extrapolate(eps);
      const double radius =
          std::max({4.0 * std::abs(pred - b.e_last), 3.0 * cfg.e_grid_step,
                    0.05 * (1.0 + std::abs(pred))});
      int best = -1;
      double best_d = radius;
      for (std::size_t ri = 0; ri < roots.size(); ++ri) {
        if (claimed[ri]) continue;
        const double d = std::abs(roots[ri].E - pred);
        if (d <= best_d) {
          best_d = d;
          best = static_cast<int>(ri);
        }
      }
      if (best >= 0) {
        claimed[static_cast<std::size_t>(best)] = 1;
        const SpectralPoint& r = roots[static_cast<std::size_t>(best)];
        b.push(eps, r.E);
        b.fail_count = 0;
        emit(eps, b, r.E, r.residual, r.converged, PointStatus::ok,
             (gi == 0 && seeds.empty()) ? Provenance::fresh_scan
                                        : Provenance::continuation);
      } else {
        unmatched_real.push_back(bi);
      }
    }

    // Pair up adjacent unmatched real branches: coalescence into the
    // complex plane.
    std::vector<char> handled(unmatched_real.size(), 0);
    for (std::size_t ui = 0; ui < unmatched_real.size(); ++ui) {
      if (handled[ui]) continue;
      ScanBranch& a = branches[unmatched_real[ui]];
      int partner = -1;
      double best_gap = std::numeric_limits<double>::infinity();
      for (std::size_t uj = ui + 1; uj < unmatched_real.size(); ++uj) {
        if (handled[uj]) continue;
        const ScanBranch& c = branches[unmatched_real[uj]];
        const double gap = std::abs(a.e_last - c.e_last);
        const double limit = std::max(10.0 * cfg.e_grid_step,
                                      0.08 * (1.0 + std::abs(a.e_last)));
        if (gap <= limit && gap < best_gap) {
          best_gap = gap;
          partner = static_cast<int>(uj);
        }
      }
      if (partner < 0) continue;
      ScanBranch& c = branches[unmatched_real[static_cast<std::size_t>(partner)]];
      const complex mid = 0.5 * (a.e_last + c.e_last);
      const double off = std::max(best_gap, im_offset_floor);
      const SpectralPoint up = find_eigenvalue_complex(
          eps, K_pair, mid + complex{0.0, off}, cfg);
      if (up.converged && !up.is_real) {
        const complex e_up =
            (up.E.imag() >= 0.0) ? up.E : std::conj(up.E);
        const complex e_dn = std::conj(e_up);
        a.is_real = false;
        c.is_real = false;
        a.push(eps, e_up);
        c.push(eps, e_dn);
        a.fail_count = c.fail_count = 0;
        emit(eps, a, e_up, up.residual, true, PointStatus::ok,
             Provenance::coalescence);
        emit(eps, c, e_dn, up.residual, true, PointStatus::ok,
             Provenance::coalescence);
        handled[ui] = 1;
        handled[static_cast<std::size_t>(partner)] = 1;
      }
    }

    // Lone unmatched real branches: chase along the axis, else retire.
    for (std::size_t ui = 0; ui < unmatched_real.size(); ++ui) {
      if (handled[ui]) continue;
      ScanBranch& b = branches[unmatched_real[ui]];
      const complex pred = b.extrapolate(eps);
      const int direction =
          (pred.real() >= b.e_last.real()) ? +1 : -1;
      double e_stop = (direction > 0)
                          ? cfg.divergence_cap
                          : std::max(e_lo - cfg.e_grid_step, 1e-6);
      // Do not walk into a neighbouring live branch.
      for (const std::size_t bj : active) {
        const ScanBranch& other = branches[bj];
        if (other.label == b.label || other.retired || !other.is_real)
          continue;
        const double oe = other.e_last.real();
        if (direction > 0 && oe > b.e_last.real())
          e_stop = std::min(e_stop, oe - 2.0 * cfg.e_grid_step);
        if (direction < 0 && oe < b.e_last.real())
          e_stop = std::max(e_stop, oe + 2.0 * cfg.e_grid_step);
      }
      std::optional<double> chased;
      if ((direction > 0 && e_stop > b.e_last.real()) ||
          (direction < 0 && e_stop < b.e_last.real()))
        chased = detail::chase_real_root(eps, K_pair, cfg,
                                         std::max(b.e_last.real(), 1e-6),
                                         direction, e_stop);
      if (chased) {
        const SpectralPoint pol = find_eigenvalue_complex(
            eps, K_pair, complex{*chased, 0.0}, cfg);
        if (pol.converged && pol.is_real &&
            std::abs(pol.E) < cfg.divergence_cap) {
          b.push(eps, pol.E);
          b.fail_count = 0;
          emit(eps, b, pol.E, pol.residual, true, PointStatus::ok,
               Provenance::continuation);
          continue;
        }
      }
      // Nothing on the axis between here and the cap (or the window edge).
      const bool rising = direction > 0;
      const bool beyond_window =
          std::abs(b.e_last) > e_hi || std::abs(pred) > e_hi;
      if (rising && (beyond_window || e_stop >= cfg.divergence_cap * 0.999)) {
        b.retired = true;
        b.retired_as = PointStatus::diverged;
        emit(eps, b, pred, std::numeric_limits<double>::quiet_NaN(), false,
             PointStatus::diverged, Provenance::continuation);
      } else if (++b.fail_count >= 2) {
        b.retired = true;
        b.retired_as = PointStatus::lost;
        emit(eps, b, b.e_last, std::numeric_limits<double>::quiet_NaN(),
             false, PointStatus::lost, Provenance::continuation);
      }
    }

    // Complex branches: polish from the extrapolated guess.
    for (const std::size_t bi : active) {
      ScanBranch& b = branches[bi];
      if (b.is_real || b.retired) continue;
      const complex pred = b.extrapolate(eps);
      const SpectralPoint pol =
          find_eigenvalue_complex(eps, K_pair, pred, cfg);
      if (pol.converged && std::abs(pol.E) < cfg.divergence_cap) {
        complex e_new = pol.E;
        // Keep the sign of Im consistent with the branch history.
        if (b.e_last.imag() != 0.0 &&
            (e_new.imag() > 0.0) != (b.e_last.imag() > 0.0) &&
            !pol.is_real)
          e_new = std::conj(e_new);
        if (pol.is_real) {
          // Pinched back onto the axis: claim a fresh root if one is near.
          int best = -1;
          double best_d = std::max(3.0 * cfg.e_grid_step,
                                   0.05 * (1.0 + std::abs(e_new)));
          for (std::size_t ri = 0; ri < roots.size(); ++ri) {
            if (claimed[ri]) continue;
            const double d = std::abs(roots[ri].E - e_new);
            if (d <= best_d) {
              best_d = d;
              best = static_cast<int>(ri);
            }
          }
          if (best >= 0) {
            claimed[static_cast<std::size_t>(best)] = 1;
            e_new = roots[static_cast<std::size_t>(best)].E;
          }
          b.is_real = true;
        }
        b.push(eps, e_new);
        b.fail_count = 0;
        emit(eps, b, e_new, pol.residual, true, PointStatus::ok,
             Provenance::continuation);
      } else if (std::abs(pol.E) >= cfg.divergence_cap) {
        b.retired = true;
        b.retired_as = PointStatus::diverged;
        emit(eps, b, pol.E, pol.residual, false, PointStatus::diverged,
             Provenance::continuation);
      } else if (++b.fail_count >= 2) {
        b.retired = true;
        b.retired_as = PointStatus::lost;
        emit(eps, b, b.e_last, std::numeric_limits<double>::quiet_NaN(),
             false, PointStatus::lost, Provenance::continuation);
      }
    }

    // Fresh roots nobody claimed: new branches.
    for (std::size_t ri = 0; ri < roots.size(); ++ri) {
      if (claimed[ri]) continue;
      ScanBranch b;
      b.label = next_label++;
      b.is_real = true;
      b.push(eps, roots[ri].E);
      branches.push_back(b);
      emit(eps, branches.back(), roots[ri].E, roots[ri].residual,
           roots[ri].converged, PointStatus::ok, Provenance::fresh_scan);
    }

    if (result.points.size() == points_before) {
      // Keep the grid point visible even when the window is empty.
      SpectralPoint pt;
      pt.epsilon = eps;
      pt.K_pair = K_pair;
      pt.status = PointStatus::empty;
      pt.provenance = Provenance::fresh_scan;
      result.points.push_back(pt);
    }

    // Deterministic row order within the grid point.
    std::sort(result.points.begin() + static_cast<std::ptrdiff_t>(points_before),
              result.points.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) {
                return a.branch_label < b.branch_label;
              });
  }

  result.branches = std::move(branches);
  return result;
}

}  // namespace ptsym::quantum
