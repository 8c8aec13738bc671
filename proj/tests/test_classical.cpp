#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "ptsym/classical/hamiltonian.hpp"
#include "ptsym/classical/orbit.hpp"
#include "ptsym/classical/period.hpp"

using namespace ptsym;
using namespace ptsym::classical;
using Catch::Approx;

namespace {

// Orbit periods at unit energy, frozen from the closed-form expression
// evaluated in extended precision.
constexpr double kPeriodHalf = 2.7992210433018296;   // eps = 1/2
constexpr double kPeriodOne = 2.4286506478875816;    // eps = 1
constexpr double kPeriodTwo = 1.8540746773013719;    // eps = 2
constexpr double kPeriodThree = 1.4738487432299643;  // eps = 3
constexpr double kPeriodFour = 1.2143253239437908;   // eps = 4

}  // namespace

TEST_CASE("closed-form periods match frozen reference values") {
  CHECK(analytic_period(0.0) ==
        Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(analytic_period(0.5) == Approx(kPeriodHalf).epsilon(1e-13));
  CHECK(analytic_period(1.0) == Approx(kPeriodOne).epsilon(1e-13));
  CHECK(analytic_period(2.0) == Approx(kPeriodTwo).epsilon(1e-13));
  CHECK(analytic_period(3.0) == Approx(kPeriodThree).epsilon(1e-13));
  CHECK(analytic_period(4.0) == Approx(kPeriodFour).epsilon(1e-13));
}

TEST_CASE("the undeformed orbit is harmonic") {
  const OrbitRun run = integrate_orbit_auto(0, 0.0, {}, 100.0);
  REQUIRE(run.trajectory.status == OrbitStatus::closed);
  REQUIRE(run.classification.closed);
  CHECK(run.classification.period ==
        Approx(std::numbers::pi).epsilon(1e-10));
  CHECK(run.classification.pt_symmetric);
  CHECK(run.trajectory.max_energy_drift < 1e-8);
}

TEST_CASE("ground orbits reproduce the closed-form period") {
  for (const double eps : {0.5, 1.0, 2.0, 4.0}) {
    const OrbitRun run = integrate_orbit_auto(0, eps, {}, 100.0);
    REQUIRE(run.trajectory.status == OrbitStatus::closed);
    CHECK(std::abs(run.classification.period - analytic_period(eps)) <
          1e-6 * analytic_period(eps));
    CHECK(run.classification.pt_symmetric);
    CHECK(run.classification.reached_mirror);
    CHECK(run.trajectory.max_energy_drift < 1e-8);
  }
}

TEST_CASE("energy is conserved along closed orbits") {
  for (const double eps : {0.0, 0.7, 1.3, 2.5}) {
    const OrbitRun run = integrate_orbit_auto(0, eps, {}, 100.0);
    REQUIRE(run.classification.closed);
    CHECK(run.trajectory.max_energy_drift < 1e-8);
  }
}

TEST_CASE("excited-region orbits close after escalating precision") {
  // Near the upper end of its existence window this family amplifies
  // local error exponentially; the ladder has to leave plain double.
  const OrbitRun run = integrate_orbit_auto(2, 0.40, {}, 2000.0);
  REQUIRE(run.trajectory.status == OrbitStatus::closed);
  CHECK(run.precision != num::Precision::f64);
  CHECK(run.trajectory.max_energy_drift < 1e-8);
  CHECK(run.classification.pt_symmetric);
}

TEST_CASE("a symmetry-broken deformation closes without pt pairing") {
  const OrbitRun run = integrate_orbit_auto(1, 8.0 / 5.0, {}, 2000.0);
  REQUIRE(run.trajectory.status == OrbitStatus::closed);
  CHECK_FALSE(run.classification.pt_symmetric);
  CHECK(run.classification.reached_conjugate);
  CHECK(run.trajectory.max_energy_drift < 1e-8);
}

TEST_CASE("candidate deformations for broken orbits are reduced rationals") {
  const auto cands = broken_candidates();
  REQUIRE_FALSE(cands.empty());
  bool has_4_3 = false, has_8_5 = false;
  for (const auto& c : cands) {
    CHECK(c.num % 4 == 0);
    CHECK(c.den % 2 == 1);
    CHECK(std::gcd(c.num, c.den) == 1);
    CHECK(c.epsilon > 1.0);
    CHECK(c.epsilon < 4.0);
    has_4_3 |= (c.num == 4 && c.den == 3);
    has_8_5 |= (c.num == 8 && c.den == 5);
  }
  CHECK(has_4_3);
  CHECK(has_8_5);
}

TEST_CASE("closure survives halving the step tolerances") {
  num::StepControl base;
  const OrbitRun a = integrate_orbit_auto(0, 1.7, base, 100.0);
  num::StepControl half = base;
  half.rel_tol *= 0.5;
  half.abs_tol *= 0.5;
  const OrbitRun b = integrate_orbit_auto(0, 1.7, half, 100.0);
  REQUIRE(a.classification.closed);
  REQUIRE(b.classification.closed);
  CHECK(std::abs(a.classification.period - b.classification.period) <
        1e-8 * a.classification.period);
}

TEST_CASE("the flow commutes with the mirror conjugation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rad(0.3, 2.0);
  std::uniform_real_distribution<double> ang(-3.0 * std::numbers::pi,
                                             3.0 * std::numbers::pi);
  std::uniform_real_distribution<double> mom(-2.0, 2.0);
  for (const double eps : {0.0, 0.3, 1.0, 2.4}) {
    for (int i = 0; i < 20; ++i) {
      const double theta = ang(rng);
      PhaseState s;
      s.position.value = std::polar(rad(rng), theta);
      s.position.phase = theta + std::numbers::pi / 2.0;
      s.momentum = {mom(rng), mom(rng)};

      PhaseState m;
      m.position.value = -std::conj(s.position.value);
      m.position.phase = -s.position.phase;
      m.momentum = std::conj(s.momentum);

      const auto d1 = hamilton_rhs(s, eps);
      const auto d2 = hamilton_rhs(m, eps);
      CHECK(std::abs(d2.dx - std::conj(d1.dx)) < 5e-13);
      CHECK(std::abs(d2.dp + std::conj(d1.dp)) < 5e-13);
      CHECK(std::abs(d2.dphase - d1.dphase) < 5e-13);
      CHECK(std::abs(energy(m, eps) - std::conj(energy(s, eps))) < 5e-13);
    }
  }
}

TEST_CASE("integer deformations avoid the phase bookkeeping") {
  // On integer sheets the force is polynomial, so the phase variable is
  // redundant; both paths must agree where they overlap.
  PhaseState s;
  s.position.value = {0.8, 0.6};
  s.position.phase = std::arg(complex(0.0, 1.0) * s.position.value);
  s.momentum = {0.3, -0.2};
  const auto d_int = hamilton_rhs(s, 2.0);
  const auto d_gen = hamilton_rhs(s, 2.0 + 1e-13);
  CHECK(std::abs(d_int.dp - d_gen.dp) < 1e-9);
}

TEST_CASE("period scans are reproducible across worker counts") {
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
  const auto a = period_scan(0, grid, {}, 100.0, {}, 1);
  const auto b = period_scan(0, grid, {}, 100.0, {}, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].epsilon == b[i].epsilon);
    CHECK(a[i].classification.closed == b[i].classification.closed);
    // Identical arithmetic, not merely close results.
    CHECK(a[i].classification.period == b[i].classification.period);
    CHECK(a[i].max_energy_drift == b[i].max_energy_drift);
    CHECK(a[i].classification.pt_symmetric ==
          b[i].classification.pt_symmetric);
  }
}

TEST_CASE("scan records carry failures instead of dropping them") {
  // A horizon too short to close is reported, not silently skipped.
  const auto rows = period_scan(0, {1.0}, {}, 0.5, {}, 1);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].classification.closed);
  CHECK(rows[0].status == OrbitStatus::no_closure);
}
