#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "ptsym/numerics/dopri5.hpp"
#include "ptsym/numerics/gamma.hpp"
#include "ptsym/numerics/real_scalar.hpp"
#include "ptsym/numerics/roots.hpp"
#include "ptsym/numerics/step_control.hpp"

using namespace ptsym::num;
using Catch::Approx;
using std::numbers::pi;

namespace {

using C1 = CVec<1>;
using C2 = CVec<2>;

StepControl tight() {
  StepControl c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

}  // namespace

TEST_CASE("tableau rows sum to the node values") {
  using T = rk_detail::Tab<double>;
  CHECK(T::a21 == Approx(T::c2).epsilon(1e-15));
  CHECK(T::a31 + T::a32 == Approx(T::c3).epsilon(1e-15));
  CHECK(T::a41 + T::a42 + T::a43 == Approx(T::c4).epsilon(1e-15));
  CHECK(T::a51 + T::a52 + T::a53 + T::a54 == Approx(T::c5).epsilon(1e-15));
  CHECK(T::a61 + T::a62 + T::a63 + T::a64 + T::a65 ==
        Approx(1.0).epsilon(1e-15));
  // The seventh stage is the fifth-order solution itself.
  CHECK(T::a71 + T::a73 + T::a74 + T::a75 + T::a76 ==
        Approx(1.0).epsilon(1e-15));
  // The embedded error weights cancel on exact solutions.
  CHECK(T::e1 + T::e3 + T::e4 + T::e5 + T::e6 + T::e7 ==
        Approx(0.0).margin(1e-16));
}

TEST_CASE("exponential growth is integrated to near round-off") {
  auto rhs = [](double, const C1& y, C1& dy) { dy[0] = y[0]; };
  const auto trail =
      integrate_adaptive<1>(rhs, tight(), 0.0, C1{{{1.0, 0.0}}}, 1.0);
  REQUIRE(trail.reason == TerminationReason::reached_end);
  CHECK(std::abs(trail.y_final[0] - std::exp(1.0)) < 1e-11);
}

TEST_CASE("harmonic oscillator returns to its start after one turn") {
  auto rhs = [](double, const C2& y, C2& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  const C2 y0{{{1.0, 0.0}, {0.0, 0.0}}};
  const auto trail = integrate_adaptive<2>(rhs, tight(), 0.0, y0, 2.0 * pi);
  REQUIRE(trail.reason == TerminationReason::reached_end);
  CHECK(std::abs(trail.y_final[0] - y0[0]) < 1e-10);
  CHECK(std::abs(trail.y_final[1] - y0[1]) < 1e-10);
}

TEST_CASE("tolerance controls the global error") {
  auto rhs = [](double, const C1& y, C1& dy) { dy[0] = y[0]; };
  double err_loose = 0.0, err_tight = 0.0;
  for (const double rel : {1e-6, 1e-10}) {
    StepControl c;
    c.rel_tol = rel;
    c.abs_tol = rel * 1e-2;
    const auto t =
        integrate_adaptive<1>(rhs, c, 0.0, C1{{{1.0, 0.0}}}, 2.0);
    const double err = std::abs(t.y_final[0] - std::exp(2.0));
    (rel == 1e-6 ? err_loose : err_tight) = err;
  }
  CHECK(err_tight < err_loose / 100.0);
}

TEST_CASE("dense output reproduces the solution inside a step") {
  auto rhs = [](double t, const C1&, C1& dy) { dy[0] = std::cos(t); };
  StepControl c;
  c.rel_tol = 1e-10;
  c.abs_tol = 1e-12;
  AdaptiveRk45<1, decltype(rhs)> st(rhs, c, 0.0, C1{{{0.0, 0.0}}}, 3.0);
  double worst = 0.0;
  while (!st.finished()) {
    REQUIRE(st.advance() == StepStatus::advanced);
    const double ta = st.t_prev(), tb = st.t();
    for (int i = 1; i < 4; ++i) {
      const double tm = ta + (tb - ta) * i / 4.0;
      const auto ym = st.interpolate(tm);
      worst = std::max(worst, std::abs(ym[0] - std::sin(tm)));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("a terminal event stops the integration at the crossing") {
  auto rhs = [](double, const C1&, C1& dy) { dy[0] = 1.0; };
  IntegrateOptions<1> opt;
  EventSpec<1> ev;
  ev.value = [](double, const C1& y) { return y[0].real() - 0.5; };
  opt.events.push_back(ev);
  const auto trail =
      integrate_adaptive<1>(rhs, tight(), 0.0, C1{{{0.0, 0.0}}}, 10.0, opt);
  REQUIRE(trail.reason == TerminationReason::event_stop);
  REQUIRE(trail.events.size() == 1);
  CHECK(trail.events[0].t == Approx(0.5).margin(1e-9));
  CHECK(trail.t_final == Approx(0.5).margin(1e-9));
}

TEST_CASE("a non-terminal event records every crossing") {
  auto rhs = [](double t, const C1&, C1& dy) { dy[0] = std::cos(t); };
  IntegrateOptions<1> opt;
  EventSpec<1> ev;
  ev.value = [](double, const C1& y) { return y[0].real(); };
  ev.on_hit = [](double, const C1&) { return true; };
  opt.events.push_back(ev);
  const auto trail = integrate_adaptive<1>(rhs, tight(), 1e-3,
                                           C1{{{std::sin(1e-3), 0.0}}},
                                           2.5 * pi, opt);
  REQUIRE(trail.reason == TerminationReason::reached_end);
  // sin crosses zero at pi and 2 pi inside (0, 2.5 pi].
  REQUIRE(trail.events.size() == 2);
  CHECK(trail.events[0].t == Approx(pi).margin(1e-8));
  CHECK(trail.events[1].t == Approx(2.0 * pi).margin(1e-8));
}

TEST_CASE("directional events ignore crossings of the wrong slope") {
  auto rhs = [](double t, const C1&, C1& dy) { dy[0] = std::cos(t); };
  IntegrateOptions<1> opt;
  EventSpec<1> ev;
  ev.value = [](double, const C1& y) { return y[0].real(); };
  ev.direction = +1;  // rising crossings only
  ev.on_hit = [](double, const C1&) { return true; };
  opt.events.push_back(ev);
  const auto trail = integrate_adaptive<1>(rhs, tight(), 1e-3,
                                           C1{{{std::sin(1e-3), 0.0}}},
                                           2.5 * pi, opt);
  REQUIRE(trail.events.size() == 1);
  CHECK(trail.events[0].t == Approx(2.0 * pi).margin(1e-8));
}

TEST_CASE("the sample thinning cap keeps the trail bounded") {
  auto rhs = [](double, const C1& y, C1& dy) { dy[0] = y[0] * 0.01; };
  StepControl c;
  c.rel_tol = 1e-10;
  c.abs_tol = 1e-12;
  c.max_step = 1e-3;
  IntegrateOptions<1> opt;
  opt.max_samples = 64;
  const auto trail =
      integrate_adaptive<1>(rhs, c, 0.0, C1{{{1.0, 0.0}}}, 1.0, opt);
  REQUIRE(trail.reason == TerminationReason::reached_end);
  CHECK(trail.times.size() <= 65);
  CHECK(trail.times.size() >= 16);
  // Thinning keeps the ends anchored.
  CHECK(trail.times.front() == 0.0);
}

#if defined(PTSYM_HAVE_FLOAT128)
TEST_CASE("quad precision integration beats double round-off") {
  using Q = __float128;
  using CQ = CVec<1, Q>;
  auto rhs = [](double, const CQ& y, CQ& dy) { dy[0] = y[0]; };
  StepControl c;
  c.rel_tol = 1e-18;
  c.abs_tol = 1e-20;
  c.min_step = 1e-14;
  const auto trail =
      integrate_adaptive<1, Q>(rhs, c, 0.0, CQ{{{Q(1), Q(0)}}}, 1.0);
  REQUIRE(trail.reason == TerminationReason::reached_end);
  const double err = static_cast<double>(
      RealOps<Q>::abs(trail.y_final[0].real() - expq(Q(1))));
  // Below one double ulp of e: unreachable with double arithmetic.
  CHECK(err < 3e-16);
}
#endif

TEST_CASE("gamma matches reference values") {
  CHECK(gamma_real(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(gamma_real(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(gamma_real(0.5) == Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_real(4.0 / 3.0) ==
        Approx(0.89297951156924921).epsilon(1e-14));
  CHECK(gamma_real(5.0 / 6.0) ==
        Approx(1.1287870299081260).epsilon(1e-14));
  CHECK(gamma_real(0.2) == Approx(4.5908437119988031).epsilon(1e-14));
  CHECK(gamma_real(7.7) == Approx(2769.8303623273137).epsilon(1e-14));
}

TEST_CASE("bracketed root solver finds simple zeros") {
  auto f = [](double x) { return std::cos(x); };
  RootBracket b;
  b.lo = 1.0;
  b.hi = 2.0;
  b.f_lo = f(1.0);
  b.f_hi = f(2.0);
  const double r = find_root_bracketed(f, b, 1e-14);
  CHECK(r == Approx(pi / 2.0).margin(1e-12));

  auto g = [](double x) { return x * x * x - 2.0; };
  RootBracket b2;
  b2.lo = 0.0;
  b2.hi = 2.0;
  b2.f_lo = g(0.0);
  b2.f_hi = g(2.0);
  CHECK(find_root_bracketed(g, b2, 1e-14) ==
        Approx(std::cbrt(2.0)).margin(1e-12));
}

TEST_CASE("bracket validation rejects same-sign endpoints") {
  RootBracket b;
  b.lo = 0.0;
  b.hi = 1.0;
  b.f_lo = 1.0;
  b.f_hi = 2.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("complex secant converges to the nearest root") {
  auto f = [](std::complex<double> z) { return z * z + 1.0; };
  const auto up = find_root_complex(f, {0.3, 0.8}, 1e-13);
  REQUIRE(up.converged);
  CHECK(std::abs(up.root - std::complex<double>(0.0, 1.0)) < 1e-10);
  const auto dn = find_root_complex(f, {0.3, -0.8}, 1e-13);
  REQUIRE(dn.converged);
  CHECK(std::abs(dn.root - std::complex<double>(0.0, -1.0)) < 1e-10);
}

TEST_CASE("step control rejects nonsense configurations") {
  StepControl c;
  c.rel_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  StepControl c2;
  c2.min_step = 1.0;
  c2.max_step = 0.5;
  CHECK_THROWS_AS(c2.validate(), std::invalid_argument);
}
