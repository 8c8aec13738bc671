#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptsym/numerics/real_scalar.hpp"
#include "ptsym/numerics/step_control.hpp"

namespace ptsym::num {

template <std::size_t N, class R = double>
using CVec = std::array<std::complex<R>, N>;

enum class StepStatus {
  advanced,
  step_underflow,
  max_steps_exceeded,
  non_finite_state,
};

namespace rk_detail {

/// Dormand-Prince 5(4) tableau.  Every coefficient is an exact integer
/// ratio evaluated in the working scalar, so that the order conditions hold
/// to the precision of R rather than to double rounding.
template <class R>
struct Tab {
  static constexpr R c2 = R(1) / R(5);
  static constexpr R c3 = R(3) / R(10);
  static constexpr R c4 = R(4) / R(5);
  static constexpr R c5 = R(8) / R(9);

  static constexpr R a21 = R(1) / R(5);
  static constexpr R a31 = R(3) / R(40);
  static constexpr R a32 = R(9) / R(40);
  static constexpr R a41 = R(44) / R(45);
  static constexpr R a42 = R(-56) / R(15);
  static constexpr R a43 = R(32) / R(9);
  static constexpr R a51 = R(19372) / R(6561);
  static constexpr R a52 = R(-25360) / R(2187);
  static constexpr R a53 = R(64448) / R(6561);
  static constexpr R a54 = R(-212) / R(729);
  static constexpr R a61 = R(9017) / R(3168);
  static constexpr R a62 = R(-355) / R(33);
  static constexpr R a63 = R(46732) / R(5247);
  static constexpr R a64 = R(49) / R(176);
  static constexpr R a65 = R(-5103) / R(18656);
  static constexpr R a71 = R(35) / R(384);
  static constexpr R a73 = R(500) / R(1113);
  static constexpr R a74 = R(125) / R(192);
  static constexpr R a75 = R(-2187) / R(6784);
  static constexpr R a76 = R(11) / R(84);

  // Difference between the 5th and the embedded 4th order weights.
  static constexpr R e1 = R(71) / R(57600);
  static constexpr R e3 = R(-71) / R(16695);
  static constexpr R e4 = R(71) / R(1920);
  static constexpr R e5 = R(-17253) / R(339200);
  static constexpr R e6 = R(22) / R(525);
  static constexpr R e7 = R(-1) / R(40);

  // Coefficients of the quartic dense-output polynomial.
  static constexpr R d1 = R(-12715105075.0) / R(11282082432.0);
  static constexpr R d3 = R(87487479700.0) / R(32700410799.0);
  static constexpr R d4 = R(-10690763975.0) / R(1880347072.0);
  static constexpr R d5 = R(701980252875.0) / R(199316789632.0);
  static constexpr R d6 = R(-1453857185.0) / R(822651844.0);
  static constexpr R d7 = R(69997945.0) / R(29380423.0);
};

// Step-size controller constants (PI control).  The controller always works
// in double; only the state and the error norm live in the working scalar.
inline constexpr double safe = 0.9;
inline constexpr double beta = 0.04;
inline constexpr double expo1 = 0.2 - beta * 0.75;
inline constexpr double fac_shrink_max = 5.0;   // h never shrinks below h/5
inline constexpr double fac_grow_max = 10.0;    // h never grows above 10 h

}  // namespace rk_detail

/// Explicit Dormand-Prince 5(4) stepper for complex-valued systems, with
/// first-same-as-last reuse, PI step-size control and a quartic dense-output
/// interpolant over the last accepted step.  The scalar R selects the
/// working precision of the state; time and step-size control stay in
/// double, which costs nothing for autonomous systems.
///
/// RHS signature: void(double t, const CVec<N, R>& y, CVec<N, R>& dydt).
template <std::size_t N, class RHS, class R = double>
class AdaptiveRk45 {
  using Ops = RealOps<R>;
  using Tb = rk_detail::Tab<R>;
  using C = std::complex<R>;

 public:
  AdaptiveRk45(RHS rhs, const StepControl& ctrl, double t0,
               const CVec<N, R>& y0, double t_end)
      : rhs_(std::move(rhs)), ctrl_(ctrl), t_(t0), t_end_(t_end), y_(y0) {
    ctrl_.validate();
    if (t0 == t_end)
      throw std::invalid_argument("AdaptiveRk45: empty integration span");
    dir_ = (t_end > t0) ? 1.0 : -1.0;
    rhs_(t_, y_, k1_);
    ++n_rhs_;
    double h0 = (ctrl_.initial_step > 0.0)
                    ? std::min(ctrl_.initial_step, ctrl_.max_step)
                    : guess_initial_step();
    h_ = dir_ * h0;
    t_prev_ = t_;
    y_prev_ = y_;
  }

  bool finished() const { return t_ == t_end_; }
  double t() const { return t_; }
  double t_prev() const { return t_prev_; }
  const CVec<N, R>& y() const { return y_; }
  const CVec<N, R>& y_prev() const { return y_prev_; }
  const CVec<N, R>& deriv() const { return k1_; }  // derivative at t()
  long n_accepted() const { return n_accepted_; }
  long n_rejected() const { return n_rejected_; }
  long n_rhs() const { return n_rhs_; }

  /// Scales the current state (and its cached derivative) by a real factor.
  /// Only meaningful for RHS linear in y; invalidates the dense interpolant.
  void rescale_state(double factor) {
    const R f = R(factor);
    for (std::size_t i = 0; i < N; ++i) {
      y_[i] *= f;
      y_prev_[i] *= f;
      k1_[i] *= f;
    }
    for (std::size_t i = 0; i < N; ++i) {
      rcont1_[i] *= f;
      rcont2_[i] *= f;
      rcont3_[i] *= f;
      rcont4_[i] *= f;
      rcont5_[i] *= f;
    }
  }

  /// Evaluates the dense interpolant of the last accepted step at time tm,
  /// which should lie in [t_prev(), t()] (or the reverse for backward runs).
  CVec<N, R> interpolate(double tm) const {
    const double h = t_ - t_prev_;
    const R theta = (h != 0.0) ? R((tm - t_prev_) / h) : R(0);
    const R th1 = R(1) - theta;
    CVec<N, R> out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = rcont1_[i] +
               theta * (rcont2_[i] +
                        th1 * (rcont3_[i] +
                               theta * (rcont4_[i] + th1 * rcont5_[i])));
    }
    return out;
  }

  /// Takes one accepted step toward t_end (never past it).  After a
  /// successful call, [t_prev(), t()] brackets the new step and
  /// interpolate() is valid on it.
  StepStatus advance() {
    using namespace rk_detail;
    if (finished()) return StepStatus::advanced;
    int nonfinite_streak = 0;
    for (;;) {
      if (n_accepted_ + n_rejected_ >= ctrl_.max_steps)
        return StepStatus::max_steps_exceeded;

      double h = dir_ * std::min(std::abs(h_), ctrl_.max_step);
      // Land exactly on t_end; also stretch slightly instead of leaving a
      // sliver of a step for the next call.
      if (dir_ * (t_ + h - t_end_) > 0.0 ||
          std::abs(t_end_ - (t_ + h)) < 0.05 * std::abs(h))
        h = t_end_ - t_;
      const double h_floor =
          std::max(ctrl_.min_step, 8.0 * std::numeric_limits<double>::epsilon() *
                                       std::abs(t_));
      if (std::abs(h) < h_floor || t_ + h == t_)
        return nonfinite_streak > 0 ? StepStatus::non_finite_state
                                    : StepStatus::step_underflow;

      const R hr = R(h);
      CVec<N, R> yt, k2, k3, k4, k5, k6, k7, ynew;
      for (std::size_t i = 0; i < N; ++i)
        yt[i] = y_[i] + hr * (Tb::a21 * k1_[i]);
      rhs_(t_ + double(Tb::c2) * h, yt, k2);
      for (std::size_t i = 0; i < N; ++i)
        yt[i] = y_[i] + hr * (Tb::a31 * k1_[i] + Tb::a32 * k2[i]);
      rhs_(t_ + double(Tb::c3) * h, yt, k3);
      for (std::size_t i = 0; i < N; ++i)
        yt[i] = y_[i] +
                hr * (Tb::a41 * k1_[i] + Tb::a42 * k2[i] + Tb::a43 * k3[i]);
      rhs_(t_ + double(Tb::c4) * h, yt, k4);
      for (std::size_t i = 0; i < N; ++i)
        yt[i] = y_[i] + hr * (Tb::a51 * k1_[i] + Tb::a52 * k2[i] +
                              Tb::a53 * k3[i] + Tb::a54 * k4[i]);
      rhs_(t_ + double(Tb::c5) * h, yt, k5);
      for (std::size_t i = 0; i < N; ++i)
        yt[i] = y_[i] + hr * (Tb::a61 * k1_[i] + Tb::a62 * k2[i] +
                              Tb::a63 * k3[i] + Tb::a64 * k4[i] +
                              Tb::a65 * k5[i]);
      rhs_(t_ + h, yt, k6);
      for (std::size_t i = 0; i < N; ++i)
        ynew[i] = y_[i] + hr * (Tb::a71 * k1_[i] + Tb::a73 * k3[i] +
                                Tb::a74 * k4[i] + Tb::a75 * k5[i] +
                                Tb::a76 * k6[i]);
      rhs_(t_ + h, ynew, k7);
      n_rhs_ += 6;

      R err2 = R(0);
      for (std::size_t i = 0; i < N; ++i) {
        const C e = hr * (Tb::e1 * k1_[i] + Tb::e3 * k3[i] + Tb::e4 * k4[i] +
                          Tb::e5 * k5[i] + Tb::e6 * k6[i] + Tb::e7 * k7[i]);
        const R sc = R(ctrl_.abs_tol) +
                     R(ctrl_.rel_tol) *
                         std::max(Ops::cabs(y_[i]), Ops::cabs(ynew[i]));
        const R q = Ops::cabs(e) / sc;
        err2 += q * q;
      }
      const double err =
          double(Ops::sqrt(err2 / R(static_cast<double>(N))));

      if (!std::isfinite(err)) {
        ++n_rejected_;
        if (++nonfinite_streak > 25) return StepStatus::non_finite_state;
        h_ = 0.1 * h;
        continue;
      }

      const double fac11 = std::pow(std::max(err, 1e-32), expo1);
      if (err <= 1.0) {
        // Accept: build the dense-output coefficients before moving on.
        for (std::size_t i = 0; i < N; ++i) {
          const C ydiff = ynew[i] - y_[i];
          const C bspl = hr * k1_[i] - ydiff;
          rcont1_[i] = y_[i];
          rcont2_[i] = ydiff;
          rcont3_[i] = bspl;
          rcont4_[i] = ydiff - hr * k7[i] - bspl;
          rcont5_[i] = hr * (Tb::d1 * k1_[i] + Tb::d3 * k3[i] + Tb::d4 * k4[i] +
                             Tb::d5 * k5[i] + Tb::d6 * k6[i] + Tb::d7 * k7[i]);
        }
        t_prev_ = t_;
        y_prev_ = y_;
        t_ = (h == t_end_ - t_) ? t_end_ : t_ + h;
        y_ = ynew;
        k1_ = k7;
        ++n_accepted_;
        double fac = fac11 / std::pow(facold_, beta);
        fac = std::max(1.0 / fac_grow_max,
                       std::min(fac_shrink_max, fac / safe));
        h_ = h / fac;
        facold_ = std::max(err, 1e-4);
        return StepStatus::advanced;
      }
      ++n_rejected_;
      h_ = h / std::min(fac_shrink_max, fac11 / safe);
    }
  }

 private:
  double guess_initial_step() {
    // Hairer's HINIT: an explicit Euler probe bounding the second derivative.
    // Heuristic only, so plain double arithmetic on narrowed norms is fine.
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc =
          ctrl_.abs_tol + ctrl_.rel_tol * double(Ops::cabs(y_[i]));
      dnf += double(std::norm(k1_[i])) / (sc * sc);
      dny += double(std::norm(y_[i])) / (sc * sc);
    }
    double h0 = (dnf <= 1e-10 || dny <= 1e-10)
                    ? 1e-6
                    : 0.01 * std::sqrt(dny / dnf);
    h0 = std::min(h0, ctrl_.max_step);
    CVec<N, R> y1, f1;
    for (std::size_t i = 0; i < N; ++i)
      y1[i] = y_[i] + R(dir_ * h0) * k1_[i];
    rhs_(t_ + dir_ * h0, y1, f1);
    ++n_rhs_;
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc =
          ctrl_.abs_tol + ctrl_.rel_tol * double(Ops::cabs(y_[i]));
      const double d = double(Ops::cabs(f1[i] - k1_[i])) / sc;
      der2 += d * d;
    }
    der2 = std::sqrt(der2) / h0;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15)
                          ? std::max(1e-6, h0 * 1e-3)
                          : std::pow(0.01 / der12, 0.2);
    if (!std::isfinite(h1)) return std::min(1e-6, ctrl_.max_step);
    return std::min({100.0 * h0, h1, ctrl_.max_step});
  }

  RHS rhs_;
  StepControl ctrl_;
  double t_, t_end_, dir_, h_ = 0.0;
  double t_prev_;
  CVec<N, R> y_, y_prev_, k1_;
  CVec<N, R> rcont1_{}, rcont2_{}, rcont3_{}, rcont4_{}, rcont5_{};
  double facold_ = 1e-4;
  long n_accepted_ = 0, n_rejected_ = 0, n_rhs_ = 1;
};

enum class TerminationReason {
  reached_end,
  event_stop,
  observer_stop,
  step_underflow,
  max_steps_exceeded,
  non_finite_state,
};

/// Scalar event function g(t, y); a root of g along the solution is located
/// by bisection on the dense interpolant.  Event values are read in double:
/// the bisection only needs their sign structure.
template <std::size_t N, class R = double>
struct EventSpec {
  std::function<double(double, const CVec<N, R>&)> value;
  int direction = 0;  ///< +1: fire on -> +, -1: fire on + -> -, 0: either
  /// Called at each located crossing.  Return false to stop the integration
  /// at the event point.  Unset means: always stop (terminal event).
  std::function<bool(double, const CVec<N, R>&)> on_hit;
};

template <std::size_t N, class R = double>
struct EventHit {
  int event_index = -1;
  double t = 0.0;
  CVec<N, R> y{};
};

template <std::size_t N, class R = double>
struct Trail {
  std::vector<double> times;
  std::vector<CVec<N, R>> states;
  double t_final = 0.0;
  CVec<N, R> y_final{};
  TerminationReason reason = TerminationReason::reached_end;
  std::vector<EventHit<N, R>> events;
  int stopping_event = -1;
  long n_accepted = 0, n_rejected = 0, n_rhs = 0;
};

template <std::size_t N, class R = double>
struct IntegrateOptions {
  std::vector<EventSpec<N, R>> events;
  /// Invoked after each accepted step; return false to stop.
  std::function<bool(double, const CVec<N, R>&)> observer;
  bool store_samples = true;
  /// When positive, the sample buffer is kept below roughly this size by
  /// repeatedly dropping every other retained sample.
  std::size_t max_samples = 0;
};

namespace rk_detail {

template <std::size_t N, class R, class Stepper>
double locate_crossing(
    const Stepper& st,
    const std::function<double(double, const CVec<N, R>&)>& g, double ta,
    double ga, double tb) {
  // Bisection on the dense interpolant; ga is the sign carrier at ta.
  double a = ta, b = tb, fa = ga;
  for (int it = 0; it < 90; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = g(m, st.interpolate(m));
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace rk_detail

/// Integrates rhs from (t0, y0) to t1, recording accepted-step samples,
/// locating event crossings on the dense interpolant, and stopping early on
/// terminal events, observer vetoes, or step failures.
template <std::size_t N, class R = double, class RHS>
Trail<N, R> integrate_adaptive(RHS rhs, const StepControl& ctrl, double t0,
                               const CVec<N, R>& y0, double t1,
                               const IntegrateOptions<N, R>& opt = {}) {
  Trail<N, R> trail;
  AdaptiveRk45<N, RHS, R> st(std::move(rhs), ctrl, t0, y0, t1);

  std::size_t keep_stride = 1, stride_phase = 0;
  auto push_sample = [&](double t, const CVec<N, R>& y) {
    if (!opt.store_samples) return;
    if (stride_phase++ % keep_stride != 0) return;
    trail.times.push_back(t);
    trail.states.push_back(y);
    if (opt.max_samples > 0 && trail.times.size() > opt.max_samples) {
      std::size_t w = 0;
      for (std::size_t r = 0; r < trail.times.size(); r += 2, ++w) {
        trail.times[w] = trail.times[r];
        trail.states[w] = trail.states[r];
      }
      trail.times.resize(w);
      trail.states.resize(w);
      keep_stride *= 2;
    }
  };

  std::vector<double> g_prev(opt.events.size());
  for (std::size_t e = 0; e < opt.events.size(); ++e)
    g_prev[e] = opt.events[e].value(t0, y0);

  push_sample(t0, y0);
  trail.t_final = t0;
  trail.y_final = y0;

  while (!st.finished()) {
    const StepStatus s = st.advance();
    if (s != StepStatus::advanced) {
      trail.reason = (s == StepStatus::step_underflow)
                         ? TerminationReason::step_underflow
                     : (s == StepStatus::max_steps_exceeded)
                         ? TerminationReason::max_steps_exceeded
                         : TerminationReason::non_finite_state;
      trail.t_final = st.t();
      trail.y_final = st.y();
      trail.n_accepted = st.n_accepted();
      trail.n_rejected = st.n_rejected();
      trail.n_rhs = st.n_rhs();
      return trail;
    }

    // Event pass over [t_prev, t].
    bool stopped = false;
    double t_stop = 0.0;
    CVec<N, R> y_stop{};
    struct Pending {
      double t;
      int idx;
    };
    std::vector<Pending> pend;
    for (std::size_t e = 0; e < opt.events.size(); ++e) {
      const auto& ev = opt.events[e];
      const double g_new = ev.value(st.t(), st.y());
      const bool rising = g_prev[e] < 0.0 && g_new >= 0.0;
      const bool falling = g_prev[e] > 0.0 && g_new <= 0.0;
      const bool fire = (ev.direction >= 0 && rising) ||
                        (ev.direction <= 0 && falling);
      if (fire) {
        const double tc = rk_detail::locate_crossing<N, R>(
            st, ev.value, st.t_prev(), g_prev[e], st.t());
        pend.push_back({tc, static_cast<int>(e)});
      }
      g_prev[e] = g_new;
    }
    std::sort(pend.begin(), pend.end(), [&](const Pending& a, const Pending& b) {
      return (st.t() >= st.t_prev()) ? a.t < b.t : a.t > b.t;
    });
    for (const Pending& p : pend) {
      EventHit<N, R> hit;
      hit.event_index = p.idx;
      hit.t = p.t;
      hit.y = st.interpolate(p.t);
      trail.events.push_back(hit);
      const auto& ev = opt.events[static_cast<std::size_t>(p.idx)];
      const bool keep_going = ev.on_hit ? ev.on_hit(hit.t, hit.y) : false;
      if (!keep_going) {
        stopped = true;
        t_stop = hit.t;
        y_stop = hit.y;
        trail.stopping_event = p.idx;
        break;
      }
    }
    if (stopped) {
      push_sample(t_stop, y_stop);
      trail.t_final = t_stop;
      trail.y_final = y_stop;
      trail.reason = TerminationReason::event_stop;
      trail.n_accepted = st.n_accepted();
      trail.n_rejected = st.n_rejected();
      trail.n_rhs = st.n_rhs();
      return trail;
    }

    push_sample(st.t(), st.y());
    trail.t_final = st.t();
    trail.y_final = st.y();
    if (opt.observer && !opt.observer(st.t(), st.y())) {
      trail.reason = TerminationReason::observer_stop;
      trail.n_accepted = st.n_accepted();
      trail.n_rejected = st.n_rejected();
      trail.n_rhs = st.n_rhs();
      return trail;
    }
  }
  trail.reason = TerminationReason::reached_end;
  trail.n_accepted = st.n_accepted();
  trail.n_rejected = st.n_rejected();
  trail.n_rhs = st.n_rhs();
  return trail;
}

}  // namespace ptsym::num
