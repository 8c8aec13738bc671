#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ptsym/classical/hamiltonian.hpp"
#include "ptsym/classical/symmetry.hpp"
#include "ptsym/numerics/dopri5.hpp"
#include "ptsym/numerics/real_scalar.hpp"

namespace ptsym::classical {

/// Thresholds governing orbit closure and classification.  Closure uses the
/// tight tolerances (position, momentum and sheet phase must all return);
/// turning-point encounters are matched with the looser radius.
struct OrbitControl {
  double closure_pos_tol = 1e-6;
  double closure_mom_tol = 1e-6;
  double closure_phase_tol = 1e-6;
  double turn_momentum_threshold = 1e-3;
  double turn_match_radius = 1e-3;
  double mirror_tol = 1e-3;
  double origin_radius = 1e-10;
  std::size_t max_samples = 400000;
  /// Working precision of the state.  Orbits grazing the end of their
  /// region amplify local error exponentially; the wider kinds buy the
  /// digits that the amplification eats.
  num::Precision precision = num::Precision::f64;
};

enum class OrbitStatus {
  closed,
  no_closure,       ///< ran to t_max without returning to the start
  origin_passage,   ///< hit the branch point with non-integer deformation
  step_underflow,
  max_steps_exceeded,
  non_finite,
};

inline const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::closed: return "closed";
    case OrbitStatus::no_closure: return "no_closure";
    case OrbitStatus::origin_passage: return "origin_passage";
    case OrbitStatus::step_underflow: return "step_underflow";
    case OrbitStatus::max_steps_exceeded: return "max_steps_exceeded";
    case OrbitStatus::non_finite: return "non_finite";
  }
  return "unknown";
}

/// One turning-point encounter: a local minimum of |p| below threshold.
struct TurnEvent {
  double time = 0.0;
  complex x{};
  double abs_p = 0.0;
};

struct OrbitClassification {
  bool closed = false;
  double period = 0.0;
  bool pt_symmetric = false;
  bool reached_mirror = false;     ///< visited -conj(x0) at a turn event
  bool reached_conjugate = false;  ///< visited conj(x0) (broken-symmetry sign)
  std::vector<TurnEvent> turn_events;
  double mirror_defect = std::numeric_limits<double>::quiet_NaN();
  double mirror_tol_used = 0.0;
};

struct OrbitSample {
  double t = 0.0;
  complex x{};
  complex p{};
  double phase = 0.0;
};

struct Trajectory {
  std::vector<OrbitSample> samples;
  double max_energy_drift = 0.0;
  double min_abs_x = std::numeric_limits<double>::infinity();
  OrbitStatus status = OrbitStatus::no_closure;
  long n_accepted = 0, n_rejected = 0, n_rhs = 0;
};

struct OrbitRun {
  int K = 0;
  double epsilon = 0.0;
  num::Precision precision = num::Precision::f64;
  Trajectory trajectory;
  OrbitClassification classification;
};

namespace detail {

template <class R>
OrbitRun integrate_orbit_impl(int K, double eps, const num::StepControl& ctrl,
                              double t_max, const OrbitControl& oc) {
  using Ops = num::RealOps<R>;
  using C = std::complex<R>;
  OrbitRun run;
  run.K = K;
  run.epsilon = eps;
  run.precision = oc.precision;

  const PhaseStateT<R> start = initial_state_of<R>(K, eps);
  const C x0 = start.position.value;
  const R phase0 = start.position.phase;
  const C mirror_target{-x0.real(), x0.imag()};
  const C conj_target{x0.real(), -x0.imag()};

  using Y = num::CVec<3, R>;
  auto rhs = [eps](double, const Y& y, Y& dydt) {
    const HamiltonDerivativeT<R> d = hamilton_rhs(
        PhaseStateT<R>{{y[0], y[2].real()}, y[1], 0.0}, eps);
    dydt[0] = d.dx;
    dydt[1] = d.dp;
    dydt[2] = C{d.dphase, R(0)};
  };

  OrbitClassification& cls = run.classification;
  Trajectory& traj = run.trajectory;
  bool origin_hit = false;
  constexpr std::size_t turn_event_cap = 100000;

  num::IntegrateOptions<3, R> opt;
  opt.max_samples = oc.max_samples;

  // d|p|^2/dt changes sign from - to + at a local minimum of |p|.
  num::EventSpec<3, R> turn;
  turn.direction = +1;
  turn.value = [eps](double, const Y& y) {
    const HamiltonDerivativeT<R> d = hamilton_rhs(
        PhaseStateT<R>{{y[0], y[2].real()}, y[1], 0.0}, eps);
    const C cp {y[1].real(), -y[1].imag()};
    return double((cp * d.dp).real());
  };
  turn.on_hit = [&](double t, const Y& y) {
    const double ap = double(Ops::cabs(y[1]));
    if (ap >= oc.turn_momentum_threshold) return true;
    if (cls.turn_events.size() < turn_event_cap)
      cls.turn_events.push_back(
          {t, complex{double(y[0].real()), double(y[0].imag())}, ap});
    const double dx0 = double(Ops::cabs(y[0] - x0));
    if (double(Ops::cabs(y[0] - mirror_target)) <= oc.turn_match_radius)
      cls.reached_mirror = true;
    if (double(Ops::cabs(y[0] - conj_target)) <= oc.turn_match_radius &&
        dx0 > oc.turn_match_radius)
      cls.reached_conjugate = true;
    if (dx0 <= oc.closure_pos_tol && ap <= oc.closure_mom_tol &&
        double(Ops::abs(y[2].real() - phase0)) <= oc.closure_phase_tol) {
      cls.closed = true;
      cls.period = t;
      return false;
    }
    return true;
  };
  opt.events.push_back(turn);

  if (!integer_deformation(eps)) {
    num::EventSpec<3, R> origin;
    origin.direction = -1;
    origin.value = [&oc](double, const Y& y) {
      return double(Ops::cabs(y[0])) - oc.origin_radius;
    };
    origin.on_hit = [&origin_hit](double, const Y&) {
      origin_hit = true;
      return false;
    };
    opt.events.push_back(origin);
  }

  opt.observer = [&](double, const Y& y) {
    const C h =
        energy(PhaseStateT<R>{{y[0], y[2].real()}, y[1], 0.0}, eps);
    const double drift = double(Ops::cabs(h - C{R(1), R(0)}));
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    traj.min_abs_x = std::min(traj.min_abs_x, double(Ops::cabs(y[0])));
    return true;
  };

  const Y y0{x0, C{R(0), R(0)}, C{phase0, R(0)}};
  const num::Trail<3, R> trail =
      num::integrate_adaptive<3, R>(rhs, ctrl, 0.0, y0, t_max, opt);

  traj.n_accepted = trail.n_accepted;
  traj.n_rejected = trail.n_rejected;
  traj.n_rhs = trail.n_rhs;
  traj.samples.reserve(trail.times.size());
  for (std::size_t i = 0; i < trail.times.size(); ++i) {
    const auto& y = trail.states[i];
    traj.samples.push_back(
        {trail.times[i],
         complex{double(y[0].real()), double(y[0].imag())},
         complex{double(y[1].real()), double(y[1].imag())},
         double(y[2].real())});
  }

  switch (trail.reason) {
    case num::TerminationReason::event_stop:
      traj.status = origin_hit ? OrbitStatus::origin_passage
                               : OrbitStatus::closed;
      break;
    case num::TerminationReason::reached_end:
      traj.status = OrbitStatus::no_closure;
      break;
    case num::TerminationReason::step_underflow:
      traj.status = OrbitStatus::step_underflow;
      break;
    case num::TerminationReason::max_steps_exceeded:
      traj.status = OrbitStatus::max_steps_exceeded;
      break;
    default:
      traj.status = OrbitStatus::non_finite;
      break;
  }
  if (traj.status == OrbitStatus::closed && !cls.closed)
    traj.status = OrbitStatus::no_closure;  // stopped by event cap safeguard

  if (cls.closed && cls.reached_mirror && !cls.reached_conjugate) {
    std::vector<complex> xs;
    xs.reserve(traj.samples.size());
    for (const auto& s : traj.samples) xs.push_back(s.x);
    const MirrorSymmetryReport rep = mirror_symmetry_report(xs, oc.mirror_tol);
    cls.mirror_defect = rep.defect;
    cls.mirror_tol_used = rep.tol_used;
    cls.pt_symmetric = rep.symmetric;
  }
  return run;
}

}  // namespace detail

/// Integrates the orbit launched from turning point K until it closes, a
/// failure occurs, or t_max is reached.
///
/// The state vector is (x, p, phase).  Turning-point encounters are located
/// as sign changes of d|p|^2/dt on the dense interpolant; this pins the
/// period far more accurately than waiting for the position to re-enter a
/// ball around x0, because |p| crosses zero linearly in time while the
/// position turns quadratically.
inline OrbitRun integrate_orbit(int K, double eps, const num::StepControl& ctrl,
                                double t_max, const OrbitControl& oc = {}) {
  if (!(t_max > 0.0))
    throw std::invalid_argument("integrate_orbit: t_max must be positive");
  switch (oc.precision) {
    case num::Precision::f64:
      return detail::integrate_orbit_impl<double>(K, eps, ctrl, t_max, oc);
    case num::Precision::f80:
      return detail::integrate_orbit_impl<long double>(K, eps, ctrl, t_max,
                                                       oc);
    case num::Precision::f128:
#if defined(PTSYM_HAVE_FLOAT128)
      return detail::integrate_orbit_impl<__float128>(K, eps, ctrl, t_max,
                                                      oc);
#else
      throw std::runtime_error(
          "integrate_orbit: this build has no quad-precision support");
#endif
  }
  throw std::logic_error("integrate_orbit: bad precision enum");
}

}  // namespace ptsym::classical
