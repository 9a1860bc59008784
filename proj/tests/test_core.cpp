#include "support.hpp"

#include "shadowlab/core.hpp"

using namespace shadowlab;
using testing::R;

TEST_CASE("orbit segments") {
  const System sys = System::ladder();
  const auto seg = orbit(sys, Point::s(-1), 3);
  CHECK(seg.images == std::vector<Point>{Point::s(-1), Point::s(0), Point::s(1), Point::s(2)});
  const System odo = System::odometer(OdometerSystem::dyadic(2));
  CHECK(orbit(odo, Point::residue(3), 2).images ==
        std::vector<Point>{Point::residue(3), Point::residue(0), Point::residue(1)});
}

TEST_CASE("metric axioms hold on every built-in system") {
  const std::vector<System> systems{System::ladder(), System::odometer(OdometerSystem::dyadic(4)),
                                    System::odometer(OdometerSystem({3, 6, 12})),
                                    System::pointed(PointedOdometer(OdometerSystem::dyadic(3)))};
  for (const auto& sys : systems) {
    CAPTURE(sys.id());
    const auto rep = check_metric_axioms(sys, sys.candidates(4));
    CHECK(rep.passed());
  }
}

TEST_CASE("odometer is an isometry, the ladder is not even nonexpansive") {
  const System odo = System::odometer(OdometerSystem::dyadic(4));
  CHECK(check_nonexpansive(odo, odo.candidates()).passed());

  // d(s(-2), s(-1)) = 2/15 < d(s(-1), s(0)) = 1/6: f stretches near 0.
  const System ladder = System::ladder();
  CHECK(ladder.dist(Point::s(-2), Point::s(-1)) == R(2, 15));
  CHECK(ladder.dist(Point::s(-1), Point::s(0)) == R(1, 6));
  CHECK_FALSE(check_nonexpansive(ladder, {Point::s(-2), Point::s(-1)}).passed());

  // The pointed map collapses nothing but is not an isometry at p.
  const System pointed = System::pointed(PointedOdometer(OdometerSystem::dyadic(3)));
  CHECK(check_nonexpansive(pointed, pointed.candidates()).passed());
}

TEST_CASE("adapted metric bound") {
  const System odo = System::odometer(OdometerSystem::dyadic(5));
  for (std::int64_t y = 0; y < 32; ++y) {
    CHECK(adapted_metric_bound(odo, Point::residue(3), Point::residue(y), 40) ==
          odo.dist(Point::residue(3), Point::residue(y)));
  }
  const System ladder = System::ladder();
  // s(-5) and s(-4) drift apart before converging to 1 together.
  const Rat b = adapted_metric_bound(ladder, Point::s(-5), Point::s(-4), 10);
  CHECK(b > ladder.dist(Point::s(-5), Point::s(-4)));
  CHECK(b == ladder.dist(Point::s(-1), Point::s(0)));
}
