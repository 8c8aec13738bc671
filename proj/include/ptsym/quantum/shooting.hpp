#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptsym/geometry/wedges.hpp"
#include "ptsym/numerics/dopri5.hpp"
#include "ptsym/numerics/step_control.hpp"

namespace ptsym::quantum {

using complex = std::complex<double>;

/// Parameters of the two-ray shooting solver.
struct ShootingConfig {
  num::StepControl ode{1e-11, 1e-13, 0.0, 1e-12, 0.25, 2000000};
  double turning_scale = 1.5;        ///< r_max >= this multiple of |E|^(1/(2+eps))
  double wkb_exponent_target = 40.0; ///< decades of decay demanded beyond the turning radius
  double r_max_override = 0.0;       ///< > 0 pins r_max (shared across a scan)
  double match_tol = 1e-7;           ///< residual accepted as an eigenvalue
  double e_grid_step = 0.1;          ///< real-axis scan resolution
  double root_tol = 1e-9;            ///< |D| target for the complex polish
  double im_tol_scale = 1e-6;        ///< is_real: |Im E| <= scale * (1 + |E|)
  double divergence_cap = 1e3;       ///< |E| beyond this is treated as runaway
  double rescale_threshold = 1e100;
  complex left_seed_scale{1.0, 0.0};
  complex right_seed_scale{1.0, 0.0};
};

/// Anchor direction for boundary conditions of wedge K: its center ray.
inline double ray_angle(int K, double eps) {
  return geom::wedge(K, eps).theta_center;
}

/// True when the two center rays of pair (K_pair, -K_pair - 1) coincide as
/// plane directions with identical potential phases, i.e. when the angular
/// separation (8 K_pair + 4) pi / (4 + eps) is a multiple of 2 pi.  That
/// happens at eps = (4 K_pair + 2)/n - 4 (pair 1 at eps = 2; pair 2 at
/// eps = 1 and 6; ...), always at integer or rational eps where the
/// potential is single-valued, so the two shooting problems become the
/// same real ODE and the matching determinant vanishes identically in E.
/// No isolated real roots exist there; root scans must report empty
/// rather than chase rounding noise.
inline bool pair_rays_degenerate(int K_pair, double eps) {
  const double sep = (8.0 * K_pair + 4.0) * geom::pi / (4.0 + eps);
  return std::abs(std::remainder(sep, 2.0 * geom::pi)) < 1e-9;
}

namespace detail {

/// Coefficient of psi in psi'' = Q(r) psi along the ray r e^{i theta}:
///   Q(r) = e^{2 i theta} (V(r e^{i theta}) - E),
///   V(r e^{i theta}) = -r^(2+eps) e^{i (2+eps)(theta + pi/2)}.
struct RayCoefficient {
  double eps;
  complex rot2;    // e^{2 i theta}
  complex vphase;  // e^{i (2+eps)(theta + pi/2)}
  complex E;

  RayCoefficient(double theta, complex E_, double eps_) : eps(eps_), E(E_) {
    rot2 = std::polar(1.0, 2.0 * theta);
    vphase = std::polar(1.0, (2.0 + eps_) * (theta + std::numbers::pi / 2.0));
  }
  complex operator()(double r) const {
    const complex V = -std::pow(r, 2.0 + eps) * vphase;
    return rot2 * (V - E);
  }
};

/// Square root of Q with non-negative real part (the decaying branch).
inline complex decaying_root(complex Q) {
  complex s = std::sqrt(Q);
  if (s.real() < 0.0) s = -s;
  return s;
}

}  // namespace detail

struct WkbSeed {
  complex psi{};
  complex dpsi_dr{};
  complex s{};  ///< local exponent sqrt(Q) with Re s > 0
  bool sign_definite = false;
};

/// Leading-order decaying WKB data at r_max on the ray at angle theta:
///   psi = s^{-1/2},  d psi / dr = -s psi.
/// sign_definite reports whether Re s clearly dominates; when it does not,
/// r_max is too small (or the ray grazes an oscillatory direction) and the
/// boundary condition is meaningless.
inline WkbSeed wkb_seed(double theta, complex E, double eps, double r_max) {
  if (!(eps >= 0.0))
    throw std::invalid_argument("wkb_seed: epsilon must be >= 0");
  if (!(r_max > 0.0))
    throw std::invalid_argument("wkb_seed: r_max must be positive");
  const detail::RayCoefficient Q(theta, E, eps);
  WkbSeed seed;
  seed.s = detail::decaying_root(Q(r_max));
  seed.sign_definite = seed.s.real() > 1e-8 * std::abs(seed.s);
  seed.psi = 1.0 / std::sqrt(seed.s);  // principal: arg(s) in (-pi/2, pi/2)
  seed.dpsi_dr = -seed.s * seed.psi;
  return seed;
}

/// Smallest radius at which the decaying WKB solution has shed at least
/// wkb_exponent_target e-foldings beyond the turning radius, but never less
/// than turning_scale times the turning radius.  The crossing is found on a
/// trapezoid accumulation and interpolated linearly, so the result moves
/// continuously with E; discontinuities here would put kinks into D(E).
inline double choose_r_max(double theta, complex E, double eps,
                           const ShootingConfig& cfg) {
  if (cfg.r_max_override > 0.0) return cfg.r_max_override;
  const double r_t = std::pow(std::abs(E) + 1.0, 1.0 / (2.0 + eps));
  const double floor_r = cfg.turning_scale * r_t;
  const detail::RayCoefficient Q(theta, E, eps);
  auto decay_rate = [&](double r) {
    return std::max(detail::decaying_root(Q(r)).real(), 0.0);
  };
  const double dr = std::max(r_t, 1.0) / 256.0;
  double r = r_t, acc = 0.0, g_prev = decay_rate(r_t);
  const double r_cap = 80.0 * r_t + 200.0;
  while (r < r_cap) {
    const double g_next = decay_rate(r + dr);
    const double inc = 0.5 * (g_prev + g_next) * dr;
    if (acc + inc >= cfg.wkb_exponent_target && inc > 0.0) {
      const double frac = (cfg.wkb_exponent_target - acc) / inc;
      return std::max(r + frac * dr, floor_r);
    }
    acc += inc;
    r += dr;
    g_prev = g_next;
  }
  return std::max(r, floor_r);
}

/// Result of integrating one ray inward from r_max to the origin.
struct RaySolution {
  int K = 0;
  double theta = 0.0;
  double r_max = 0.0;
  complex psi0{};        ///< psi at the origin
  complex dpsi0{};       ///< d psi / dr at the origin
  double log10_growth = 0.0;
  long n_accepted = 0;
  int rescales = 0;
  bool ok = false;
  std::string error;
};

/// Integrates psi'' = Q(r) psi from the WKB seed at r_max down to r = 0.
/// The equation is linear, so the state may be rescaled freely whenever it
/// threatens overflow; rescalings multiply psi and psi' alike and leave the
/// matching determinant's zero set untouched.
inline RaySolution shoot_ray(int K, complex E, double eps,
                             const ShootingConfig& cfg,
                             complex seed_scale = complex{1.0, 0.0}) {
  RaySolution sol;
  sol.K = K;
  sol.theta = ray_angle(K, eps);
  sol.r_max = choose_r_max(sol.theta, E, eps, cfg);

  const WkbSeed seed = wkb_seed(sol.theta, E, eps, sol.r_max);
  if (!seed.sign_definite) {
    sol.error = "WKB exponent not sign-definite at r_max; enlarge r_max";
    return sol;
  }

  const detail::RayCoefficient Q(sol.theta, E, eps);
  auto rhs = [&Q](double r, const num::CVec<2>& y, num::CVec<2>& d) {
    d[0] = y[1];
    d[1] = Q(r) * y[0];
  };

  const double scale0 = std::max(std::abs(seed.psi), std::abs(seed.dpsi_dr));
  num::CVec<2> y{seed.psi * seed_scale, seed.dpsi_dr * seed_scale};
  num::AdaptiveRk45<2, decltype(rhs)> st(rhs, cfg.ode, sol.r_max, y, 0.0);

  while (!st.finished()) {
    const num::StepStatus s = st.advance();
    if (s != num::StepStatus::advanced) {
      sol.error = (s == num::StepStatus::step_underflow)
                      ? "step underflow"
                  : (s == num::StepStatus::max_steps_exceeded)
                      ? "max steps exceeded"
                      : "non-finite state";
      return sol;
    }
    const double m = std::max(std::abs(st.y()[0]), std::abs(st.y()[1]));
    if (m > cfg.rescale_threshold) {
      st.rescale_state(1.0 / m);
      sol.log10_growth += std::log10(m);
      ++sol.rescales;
    }
  }
  sol.psi0 = st.y()[0];
  sol.dpsi0 = st.y()[1];
  sol.n_accepted = st.n_accepted();
  const double scale1 = std::max(std::abs(sol.psi0), std::abs(sol.dpsi0));
  if (scale0 > 0.0 && scale1 > 0.0)
    sol.log10_growth += std::log10(scale1 / scale0);
  sol.ok = std::isfinite(std::abs(sol.psi0)) &&
           std::isfinite(std::abs(sol.dpsi0));
  if (!sol.ok) sol.error = "non-finite ray endpoint";
  return sol;
}

/// Wronskian-style matching of the two rays of pair (K_pair, -K_pair - 1)
/// at the origin.  Derivatives are taken with respect to the plane
/// coordinate x (d/dx = e^{-i theta} d/dr on a ray), and each ray is
/// normalized by a conjugation-invariant magnitude so that |D| is O(1) and
/// independent of seed scaling:
///
///   D(E) = [e^{-i th_R} psi_R'(0) psi_L(0) - e^{-i th_L} psi_L'(0) psi_R(0)]
///          / (n_R n_L).
///
/// With the seed branches chosen conjugation-equivariantly, D(conj E) =
/// conj(D(E)), so D is real on the real axis and eigenvalues of the
/// unbroken phase are genuine sign changes.
struct MatchingResult {
  complex E{};
  complex D{};
  RaySolution right;  ///< wedge K_pair
  RaySolution left;   ///< wedge -K_pair - 1
  bool ok = false;
  std::string error;
};

inline MatchingResult matching(complex E, double eps, int K_pair,
                               const ShootingConfig& cfg) {
  MatchingResult m;
  m.E = E;
  ShootingConfig local = cfg;
  if (local.r_max_override <= 0.0) {
    // One shared radius keeps the two rays comparable and D smooth in E.
    const double rr =
        choose_r_max(ray_angle(K_pair, eps), E, eps, cfg);
    const double rl =
        choose_r_max(ray_angle(geom::pt_partner(K_pair), eps), E, eps, cfg);
    local.r_max_override = std::max(rr, rl);
  }
  m.right = shoot_ray(K_pair, E, eps, local, cfg.right_seed_scale);
  m.left = shoot_ray(geom::pt_partner(K_pair), E, eps, local,
                     cfg.left_seed_scale);
  if (!m.right.ok || !m.left.ok) {
    m.error = !m.right.ok ? "right ray: " + m.right.error
                          : "left ray: " + m.left.error;
    return m;
  }
  const double e_scale = 1.0 + std::abs(E);
  auto ray_norm = [e_scale](const RaySolution& r) {
    return std::sqrt(std::norm(r.psi0) + std::norm(r.dpsi0) / e_scale);
  };
  const double nr = ray_norm(m.right), nl = ray_norm(m.left);
  if (nr == 0.0 || nl == 0.0) {
    m.error = "degenerate ray endpoint";
    return m;
  }
  const complex phase_r = std::polar(1.0, -m.right.theta);
  const complex phase_l = std::polar(1.0, -m.left.theta);
  m.D = (phase_r * m.right.dpsi0 * m.left.psi0 -
         phase_l * m.left.dpsi0 * m.right.psi0) /
        (nr * nl);
  m.ok = true;
  return m;
}

}  // namespace ptsym::quantum
