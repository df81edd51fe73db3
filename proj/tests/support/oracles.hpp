#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainscore/chains.hpp"
#include "chainscore/geometry.hpp"
#include "chainscore/ingest.hpp"
#include "chainscore/util/rng.hpp"

namespace chainscore::testing {

// Independent shooting-angle computation: the angle between the two
// ball-to-post vectors via atan2 of cross and dot products. The production
// code uses the three-branch arctan difference instead, so agreement is a
// real cross-check rather than a reimplementation.
double oracle_shooting_angle(double x, double y);

// Independent goal distance via std::hypot.
double oracle_goal_distance(double x, double y);

// Reference chain segmentation that scans backward from every shot,
// applying the cut rules literally. The production extractor runs forward
// with incremental run state; this one re-derives each chain from scratch.
struct OracleChain {
    int team_id = 0;
    bool ends_in_goal = false;
    std::vector<int> event_indices;
    std::vector<BallState> starts;
    std::vector<BallState> ends;
};

struct OracleChainReport {
    int shots_seen = 0;
    int dropped_shots = 0;
};

std::vector<OracleChain> oracle_chains(const std::vector<Event>& events,
                                       OracleChainReport* report = nullptr);

// Field-by-field comparison; on mismatch fills `why` with a description.
bool chains_equal(const std::vector<PossessionChain>& got, const std::vector<OracleChain>& want,
                  std::string* why = nullptr);

// Adversarial random event stream: two teams, mixed event kinds, missing
// locations, duels with assorted outcomes, multi-shot possessions, period
// and possession boundaries.
std::vector<Event> random_event_stream(Rng& rng);

// Minimal event constructor for hand-built fixtures.
Event make_test_event(int event_index, int team_id, int player_id, EventType type,
                      std::optional<BallState> location, int possession_id, int period = 1,
                      const std::string& outcome = "", bool goal = false);

}  // namespace chainscore::testing
