#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ptsym/geometry/wedges.hpp"

using namespace ptsym::geom;
using Catch::Approx;

TEST_CASE("undeformed wedges straddle both halves of the real axis") {
  const Wedge right = wedge(0, 0.0);
  CHECK(right.theta_center == Approx(0.0).margin(1e-15));
  CHECK(right.theta_lower == Approx(-pi / 4.0).margin(1e-15));
  CHECK(right.theta_upper == Approx(pi / 4.0).margin(1e-15));
  CHECK(right.opening == Approx(pi / 2.0).margin(1e-15));

  const Wedge left = wedge(-1, 0.0);
  CHECK(left.theta_center == Approx(-pi).margin(1e-15));

  // Without deformation the centers march in right angles around the
  // covering surface instead of wrapping.
  CHECK(wedge(1, 0.0).theta_center == Approx(pi).margin(1e-14));
  CHECK(wedge(2, 0.0).theta_center == Approx(2.0 * pi).margin(1e-14));
  CHECK(wedge(3, 0.0).theta_center == Approx(3.0 * pi).margin(1e-14));
}

TEST_CASE("deformation compresses and rotates the wedges") {
  CHECK(wedge(0, 1.0).opening == Approx(2.0 * pi / 5.0).margin(1e-14));
  CHECK(wedge(2, 4.0).theta_center == Approx(3.0 * pi / 4.0).margin(1e-14));
  CHECK(wedge(2, 8.0).theta_center == Approx(pi / 3.0).margin(1e-14));
  CHECK(wedge(2, 2.0).theta_center ==
        Approx(7.0 * pi / 6.0).margin(1e-14));

  // The ground pair sinks symmetrically below the real axis: the centers
  // of wedges 0 and -1 stay mirror images through the imaginary axis.
  const double eps = 0.7;
  const Wedge k0 = wedge(0, eps);
  const Wedge km1 = wedge(-1, eps);
  CHECK(k0.theta_center == Approx(-pi - km1.theta_center).margin(1e-12));
  CHECK(k0.theta_center < 0.0);
  CHECK(k0.theta_center > -pi / 2.0);
}

TEST_CASE("wedge membership uses the unreduced angle") {
  CHECK(wedge_contains(wedge(0, 0.0), 0.1));
  CHECK_FALSE(wedge_contains(wedge(0, 0.0), pi / 2.0));
  CHECK_FALSE(wedge_contains(wedge(1, 1.0), pi / 2.0));
  const Wedge w2 = wedge(2, 2.0);
  CHECK(wedge_contains(w2, 7.0 * pi / 6.0));
  CHECK_FALSE(wedge_contains(w2, 7.0 * pi / 6.0 - 2.0 * pi));
}

TEST_CASE("turning points sit on the unit circle where the energy balances") {
  const TurningPoint tp0 = turning_point(0, 0.0);
  CHECK(std::abs(tp0.x - std::complex<double>(1.0, 0.0)) < 1e-14);
  const TurningPoint tpm1 = turning_point(-1, 0.0);
  CHECK(std::abs(tpm1.x - std::complex<double>(-1.0, 0.0)) < 1e-14);

  const TurningPoint tp = turning_point(2, 0.5);
  CHECK(tp.theta == Approx(3.0 * pi / 2.0).margin(1e-13));

  for (int K = -4; K <= 4; ++K)
    for (const double eps : {0.0, 0.3, 1.0, 2.4, 4.0})
      CHECK(turning_point(K, eps).residual < 1e-12);
}

TEST_CASE("pt pairing is an involution on wedge indices") {
  for (int K = -6; K <= 6; ++K) CHECK(pt_partner(pt_partner(K)) == K);
  CHECK(pt_partner(0) == -1);
  CHECK(pt_partner(1) == -2);

  // Paired wedges mirror each other through the imaginary axis.
  for (const double eps : {0.0, 0.5, 1.0, 2.5}) {
    const Wedge a = wedge(1, eps);
    const Wedge b = wedge(pt_partner(1), eps);
    CHECK(std::cos(a.theta_center) ==
          Approx(-std::cos(b.theta_center)).margin(1e-12));
    CHECK(std::sin(a.theta_center) ==
          Approx(std::sin(b.theta_center)).margin(1e-12));
  }
}

TEST_CASE("turning point crossings of one wedge are found in closed form") {
  // Each call covers one literal (turning point, wedge) pair.
  const auto t11 = transition_epsilons(1, 1);
  REQUIRE(t11.size() == 1);
  CHECK(t11[0].epsilon == Approx(1.0).margin(1e-12));
  CHECK(t11[0].kind == CrossingKind::exit);
  CHECK(t11[0].edge == WedgeEdge::lower);

  const auto t21 = transition_epsilons(2, 1);
  REQUIRE(t21.size() == 1);
  CHECK(t21[0].epsilon == Approx(3.0).margin(1e-12));
  CHECK(t21[0].kind == CrossingKind::entry);
  CHECK(t21[0].edge == WedgeEdge::upper);

  const auto t32 = transition_epsilons(3, 2);
  REQUIRE(t32.size() == 2);
  CHECK(t32[0].epsilon == Approx(1.5).margin(1e-12));
  CHECK(t32[0].kind == CrossingKind::entry);
  CHECK(t32[1].epsilon == Approx(5.0).margin(1e-12));
  CHECK(t32[1].kind == CrossingKind::exit);

  // The home turning point leaves its own wedge at 1/K.
  for (int K = 1; K <= 6; ++K) {
    const auto t = transition_epsilons(K, K);
    REQUIRE_FALSE(t.empty());
    CHECK(t[0].epsilon == Approx(1.0 / K).margin(1e-12));
    CHECK(t[0].kind == CrossingKind::exit);
  }
}

TEST_CASE("each wedge sees a characteristic crossing sequence") {
  // Collecting over nearby turning points gives the full story of one
  // wedge: wedge 1 loses its resident point at 1 and gains the next at 3;
  // wedge 2 repeats the pattern at 1/2, 3/2 and again at 5, 7.
  const auto collect = [](int K_w) {
    std::vector<WedgeCrossing> all;
    for (int k = -8; k <= 8; ++k)
      for (const auto& c : transition_epsilons(k, K_w)) all.push_back(c);
    std::sort(all.begin(), all.end(),
              [](const WedgeCrossing& a, const WedgeCrossing& b) {
                return a.epsilon < b.epsilon;
              });
    return all;
  };

  const auto w1 = collect(1);
  REQUIRE(w1.size() == 2);
  CHECK(w1[0].epsilon == Approx(1.0).margin(1e-12));
  CHECK(w1[0].kind == CrossingKind::exit);
  CHECK(w1[1].epsilon == Approx(3.0).margin(1e-12));
  CHECK(w1[1].kind == CrossingKind::entry);

  const auto w2 = collect(2);
  REQUIRE(w2.size() == 4);
  CHECK(w2[0].epsilon == Approx(0.5).margin(1e-12));
  CHECK(w2[0].kind == CrossingKind::exit);
  CHECK(w2[1].epsilon == Approx(1.5).margin(1e-12));
  CHECK(w2[1].kind == CrossingKind::entry);
  CHECK(w2[2].epsilon == Approx(5.0).margin(1e-12));
  CHECK(w2[2].kind == CrossingKind::exit);
  CHECK(w2[3].epsilon == Approx(7.0).margin(1e-12));
  CHECK(w2[3].kind == CrossingKind::entry);
}

TEST_CASE("crossings are consistent with direct membership checks") {
  const int K_tp = 2, K_w = 2;
  for (const auto& c : transition_epsilons(K_tp, K_w)) {
    const double lo = std::max(0.0, c.epsilon - 1e-4);
    const double hi = c.epsilon + 1e-4;
    const bool in_lo =
        wedge_contains(wedge(K_w, lo), turning_point(K_tp, lo).theta);
    const bool in_hi =
        wedge_contains(wedge(K_w, hi), turning_point(K_tp, hi).theta);
    if (c.kind == CrossingKind::exit) {
      CHECK(in_lo);
      CHECK_FALSE(in_hi);
    } else {
      CHECK_FALSE(in_lo);
      CHECK(in_hi);
    }
  }
}

TEST_CASE("rational deformations close after finitely many sheets") {
  const auto s = sheet_count(12.0 / 5.0);
  REQUIRE(s.has_value());
  CHECK(s->p == 12);
  CHECK(s->q == 5);

  const auto integer = sheet_count(3.0);
  REQUIRE(integer.has_value());
  CHECK(integer->p == 3);
  CHECK(integer->q == 1);

  const auto reduced = sheet_count(1.5);
  REQUIRE(reduced.has_value());
  CHECK(reduced->p == 3);
  CHECK(reduced->q == 2);

  CHECK_FALSE(sheet_count(std::sqrt(2.0), 32).has_value());
}
