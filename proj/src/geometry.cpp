#include "chainscore/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace chainscore {

std::string zone_name(Zone z) {
    switch (z) {
        case Zone::Defending: return "Defending";
        case Zone::Midfield: return "Midfield";
        case Zone::Attacking: return "Attacking";
    }
    return "?";
}

bool in_bounds(const BallState& s, const PitchSpec& spec) {
    return s.x >= 0.0 && s.x <= spec.length && s.y >= 0.0 && s.y <= spec.width;
}

namespace {

void require_in_bounds(const BallState& s, const PitchSpec& spec) {
    if (!in_bounds(s, spec)) {
        throw std::domain_error("ball state (" + std::to_string(s.x) + ", " +
                                std::to_string(s.y) + ") outside the pitch");
    }
}

}  // namespace

Zone zone_of(const BallState& s, const PitchSpec& spec) {
    require_in_bounds(s, spec);
    if (s.x < spec.zone_band) return Zone::Defending;
    if (s.x < 2.0 * spec.zone_band) return Zone::Midfield;
    return Zone::Attacking;
}

double shooting_angle(const BallState& s, const PitchSpec& spec) {
    require_in_bounds(s, spec);
    const double mid = spec.goal_center_y();
    const double half = spec.goal_width / 2.0;
    double dx = spec.length - s.x;
    if (dx <= 0.0) dx = 1e-9;  // degenerate-input rule for x = 120

    if (s.y > mid) {
        return std::atan((s.y - mid + half) / dx) - std::atan((s.y - mid - half) / dx);
    }
    if (s.y < mid) {
        return std::atan((mid + half - s.y) / dx) - std::atan((mid - half - s.y) / dx);
    }
    return 2.0 * std::atan(half / dx);
}

double goal_distance(const BallState& s, const PitchSpec& spec) {
    require_in_bounds(s, spec);
    return std::hypot(spec.length - s.x, spec.goal_center_y() - s.y);
}

double goal_distance_literal(const BallState& s, const PitchSpec& spec) {
    require_in_bounds(s, spec);
    return std::sqrt(s.x * s.x + (spec.goal_center_y() - s.y) * (spec.goal_center_y() - s.y));
}

}  // namespace chainscore
