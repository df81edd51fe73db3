#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "chainscore/geometry.hpp"
#include "chainscore/util/rng.hpp"
#include "support/oracles.hpp"

using namespace chainscore;

namespace {
const PitchSpec kPitch;
}

TEST_CASE("zones split the pitch into thirds on x") {
    CHECK(zone_of({10, 40}, kPitch) == Zone::Defending);
    CHECK(zone_of({40, 5}, kPitch) == Zone::Midfield);
    CHECK(zone_of({119, 79}, kPitch) == Zone::Attacking);

    // Boundary membership: [0,40) / [40,80) / [80,120].
    CHECK(zone_of({0, 0}, kPitch) == Zone::Defending);
    CHECK(zone_of({39.999, 40}, kPitch) == Zone::Defending);
    CHECK(zone_of({40, 40}, kPitch) == Zone::Midfield);
    CHECK(zone_of({79.999, 40}, kPitch) == Zone::Midfield);
    CHECK(zone_of({80, 40}, kPitch) == Zone::Attacking);
    CHECK(zone_of({120, 80}, kPitch) == Zone::Attacking);
}

TEST_CASE("zone names") {
    CHECK(zone_name(Zone::Defending) == "Defending");
    CHECK(zone_name(Zone::Midfield) == "Midfield");
    CHECK(zone_name(Zone::Attacking) == "Attacking");
}

TEST_CASE("out-of-bounds states are rejected") {
    CHECK_FALSE(in_bounds({-0.001, 40}, kPitch));
    CHECK_FALSE(in_bounds({120.001, 40}, kPitch));
    CHECK_FALSE(in_bounds({60, -1}, kPitch));
    CHECK_FALSE(in_bounds({60, 80.5}, kPitch));
    CHECK(in_bounds({0, 0}, kPitch));
    CHECK(in_bounds({120, 80}, kPitch));

    CHECK_THROWS_AS(zone_of({-1, 40}, kPitch), std::domain_error);
    CHECK_THROWS_AS(shooting_angle({121, 40}, kPitch), std::domain_error);
    CHECK_THROWS_AS(goal_distance({60, 81}, kPitch), std::domain_error);
}

TEST_CASE("shooting angle matches the hand-computed cases") {
    // Penalty spot: symmetric, 2*arctan(4/12).
    CHECK(shooting_angle({108, 40}, kPitch) == doctest::Approx(2 * std::atan(4.0 / 12.0))
                                                   .epsilon(1e-12));
    CHECK(shooting_angle({108, 40}, kPitch) == doctest::Approx(0.6435011087932844).epsilon(1e-12));

    // Off-centre above both posts: arctan(24/20) - arctan(16/20).
    const double expected = std::atan(24.0 / 20.0) - std::atan(16.0 / 20.0);
    CHECK(shooting_angle({100, 60}, kPitch) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(shooting_angle({100, 60}, kPitch) == doctest::Approx(0.20131710837464067).epsilon(1e-9));
}

TEST_CASE("shooting angle is mirror symmetric about the centre line") {
    CHECK(shooting_angle({100, 20}, kPitch) ==
          doctest::Approx(shooting_angle({100, 60}, kPitch)).epsilon(1e-15));

    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.real() * 119.9;
        const double dy = rng.real() * 40.0;
        CHECK(shooting_angle({x, 40 - dy}, kPitch) ==
              doctest::Approx(shooting_angle({x, 40 + dy}, kPitch)).epsilon(1e-12));
    }
}

TEST_CASE("shooting angle grows monotonically while approaching on the centre line") {
    double previous = shooting_angle({0, 40}, kPitch);
    for (double x = 5; x <= 119; x += 1) {
        const double angle = shooting_angle({x, 40}, kPitch);
        CHECK(angle > previous);
        previous = angle;
    }
}

TEST_CASE("shooting angle stays in (0, pi) everywhere in bounds") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.real() * 120.0;
        const double y = rng.real() * 80.0;
        const double angle = shooting_angle({x, y}, kPitch);
        CHECK(angle > 0.0);
        CHECK(angle < 3.14159265358979323846);
    }
}

TEST_CASE("goal line evaluation uses the documented nudge") {
    // On the goal line the post distance dx collapses to 0 and is replaced
    // by 1e-9, so the result equals the closed form evaluated at dx = 1e-9.
    CHECK(shooting_angle({120, 40}, kPitch) == 2.0 * std::atan(4.0 / 1e-9));
    CHECK(shooting_angle({120, 40}, kPitch) > 3.1);  // nearly pi between the posts
    CHECK(shooting_angle({120, 0}, kPitch) ==
          std::atan(44.0 / 1e-9) - std::atan(36.0 / 1e-9));
    CHECK(shooting_angle({120, 0}, kPitch) > 0.0);
}

TEST_CASE("goal distance matches the hand-computed cases") {
    CHECK(goal_distance({120, 40}, kPitch) == 0.0);
    CHECK(goal_distance({108, 40}, kPitch) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(goal_distance({117, 36}, kPitch) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("goal distance equals 120 - x on the centre line") {
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.real() * 120.0;
        CHECK(goal_distance({x, 40}, kPitch) == doctest::Approx(120.0 - x).epsilon(1e-12));
    }
}

TEST_CASE("literal distance variant measures from the origin-x corner") {
    CHECK(goal_distance_literal({108, 40}, kPitch) == doctest::Approx(108.0).epsilon(1e-15));
    CHECK(goal_distance_literal({3, 44}, kPitch) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(goal_distance_literal({0, 40}, kPitch) == 0.0);
}

TEST_CASE("angle and distance agree with the independent oracles") {
    Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.real() * 120.0;
        const double y = rng.real() * 80.0;
        CHECK(std::fabs(shooting_angle({x, y}, kPitch) -
                        testing::oracle_shooting_angle(x, y)) < 1e-9);
        CHECK(std::fabs(goal_distance({x, y}, kPitch) -
                        testing::oracle_goal_distance(x, y)) < 1e-12);
    }
}
