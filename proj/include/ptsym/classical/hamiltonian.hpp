#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ptsym/geometry/wedges.hpp"
#include "ptsym/numerics/real_scalar.hpp"

namespace ptsym::classical {

using complex = std::complex<double>;
inline constexpr complex iu{0.0, 1.0};

template <class R>
inline constexpr std::complex<R> iu_of{R(0), R(1)};

/// A point of the complex coordinate plane together with the continuously
/// tracked phase of (i x).  The phase is what distinguishes sheets of the
/// covering surface for non-integer deformation; it must be transported
/// along trajectories, never recomputed from arg().
template <class R>
struct RiemannPointT {
  std::complex<R> value{};
  R phase = R(0);  ///< unwrapped arg(i * value)
};
using RiemannPoint = RiemannPointT<double>;

/// Phase-space state of the complex dynamics.
template <class R>
struct PhaseStateT {
  RiemannPointT<R> position{};
  std::complex<R> momentum{};
  double time = 0.0;
};
using PhaseState = PhaseStateT<double>;

inline bool integer_deformation(double eps) {
  return eps >= 0.0 && std::abs(eps - std::round(eps)) <= 1e-12;
}

namespace detail {

template <class C>
inline C pow_uint(C w, long n) {
  C r{1, 0};
  while (n > 0) {
    if (n & 1) r *= w;
    w *= w;
    n >>= 1;
  }
  return r;
}

}  // namespace detail

/// V(x) = x^2 (i x)^eps evaluated on the covering surface.
///
/// For integer eps the potential is single valued and is computed as a plain
/// polynomial in the value, which stays correct even when a trajectory runs
/// through the origin and the tracked phase cannot follow.  Otherwise the
/// phase selects the sheet:  V = -|x|^(2+eps) exp(i (2+eps) phase).
template <class R>
std::complex<R> potential(const RiemannPointT<R>& pt, double eps) {
  using Ops = num::RealOps<R>;
  if (!(eps >= 0.0))
    throw std::invalid_argument("potential: epsilon must be >= 0");
  if (integer_deformation(eps)) {
    const long n = std::lround(eps);
    return pt.value * pt.value * detail::pow_uint(iu_of<R> * pt.value, n);
  }
  const R m = Ops::cabs(pt.value);
  if (m == R(0)) return {R(0), R(0)};
  const R ex = R(2) + R(eps);
  return -Ops::pow(m, ex) * Ops::unit_polar(ex * pt.phase);
}

/// H(x, p) = p^2 + V(x); conserved along trajectories and equal to 1 for
/// orbits launched from a turning point of unit energy.
template <class R>
std::complex<R> energy(const PhaseStateT<R>& s, double eps) {
  return s.momentum * s.momentum + potential(s.position, eps);
}

template <class R>
struct HamiltonDerivativeT {
  std::complex<R> dx{};
  std::complex<R> dp{};
  R dphase = R(0);
};
using HamiltonDerivative = HamiltonDerivativeT<double>;

/// Hamilton's equations for H = p^2 + x^2 (i x)^eps:
///   dx/dt = 2 p,
///   dp/dt = -(2 + eps) x (i x)^eps,
///   d(phase)/dt = Im(dx/dt / x).
/// The phase derivative is singular at x = 0; the guard below returns 0
/// there and leaves to the caller (the orbit integrator) the decision of
/// whether an origin passage invalidates the run.
template <class R>
HamiltonDerivativeT<R> hamilton_rhs(const PhaseStateT<R>& s, double eps) {
  using Ops = num::RealOps<R>;
  if (!(eps >= 0.0))
    throw std::invalid_argument("hamilton_rhs: epsilon must be >= 0");
  HamiltonDerivativeT<R> d;
  d.dx = R(2) * s.momentum;
  const std::complex<R> x = s.position.value;
  std::complex<R> force_factor;  // x (i x)^eps
  if (integer_deformation(eps)) {
    const long n = std::lround(eps);
    force_factor = x * detail::pow_uint(iu_of<R> * x, n);
  } else {
    const R m = Ops::cabs(x);
    const R ex = R(1) + R(eps);
    force_factor = (m == R(0))
                       ? std::complex<R>{R(0), R(0)}
                       : -iu_of<R> * Ops::pow(m, ex) *
                             Ops::unit_polar(ex * s.position.phase);
  }
  d.dp = -(R(2) + R(eps)) * force_factor;
  const R m2 = std::norm(x);
  // Im(dx/x) expanded over |x|^2 to keep one division and stay exact in R.
  d.dphase = (m2 < R(1e-280))
                 ? R(0)
                 : (d.dx.imag() * x.real() - d.dx.real() * x.imag()) / m2;
  return d;
}

/// State at t = 0 for the orbit launched from turning point K in the working
/// scalar: zero momentum, position on the unit circle of the covering
/// surface at the turning angle.
template <class R>
PhaseStateT<R> initial_state_of(int K, double eps) {
  using Ops = num::RealOps<R>;
  const R pi = Ops::pi();
  const R theta = R(2 * K + 1) * pi / (R(2) + R(eps)) - pi / R(2);
  PhaseStateT<R> s;
  s.position.value = Ops::unit_polar(theta);
  s.position.phase = theta + pi / R(2);
  s.momentum = std::complex<R>{R(0), R(0)};
  s.time = 0.0;
  return s;
}

/// Double-precision entry point; agrees with turning_point(K, eps) by
/// construction (same angle formula).
inline PhaseState initial_state(int K, double eps) {
  const geom::TurningPoint tp = geom::turning_point(K, eps);
  PhaseState s;
  s.position.value = tp.x;
  s.position.phase = tp.theta + geom::pi / 2.0;
  s.momentum = complex{0.0, 0.0};
  s.time = 0.0;
  return s;
}

}  // namespace ptsym::classical
