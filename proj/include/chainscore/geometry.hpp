#pragma once

#include <string>

namespace chainscore {

// Ball position in pitch coordinates. The attacking team always plays toward
// x = 120; event data is already oriented per acting team.
struct BallState {
    double x = 0.0;  // [0, 120], meters along the attack direction
    double y = 0.0;  // [0, 80], meters across the pitch

    bool operator==(const BallState&) const = default;
};

struct PitchSpec {
    double length = 120.0;
    double width = 80.0;
    double goal_width = 8.0;      // posts at y = 36 and y = 44
    double zone_band = 40.0;      // zone boundaries at x = 40 and x = 80

    double goal_center_y() const { return width / 2.0; }
};

enum class Zone { Defending, Midfield, Attacking };

std::string zone_name(Zone z);

bool in_bounds(const BallState& s, const PitchSpec& spec);

// Total on x: [0,40) Defending, [40,80) Midfield, [80,120] Attacking.
// Out-of-bounds states throw std::domain_error.
Zone zone_of(const BallState& s, const PitchSpec& spec);

// Angle subtended at the ball by the two goalposts, in radians, in (0, pi).
// The y > 40, y < 40 and y = 40 arctan branches agree in the limit; x = 120
// exactly is evaluated at 120 - 1e-9 to keep the arctan arguments finite.
double shooting_angle(const BallState& s, const PitchSpec& spec);

// Euclidean distance to the goal center (120, 40); equals 120 - x on the
// center line.
double goal_distance(const BallState& s, const PitchSpec& spec);

// Distance variant sqrt(x^2 + (40-y)^2), selectable through config for
// sensitivity runs only; goal_distance is the default everywhere.
double goal_distance_literal(const BallState& s, const PitchSpec& spec);

}  // namespace chainscore
