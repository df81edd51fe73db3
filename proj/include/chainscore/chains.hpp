#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/ingest.hpp"

namespace chainscore {

// One on-ball action inside a possession chain.
struct ChainAction {
    int k = 1;  // 1-based index within the chain
    int event_index = 0;
    int player_id = -1;
    std::string player_name;
    EventType type = EventType::Pass;
    BallState start_state;
    BallState end_state;  // next action's start, or the shot location itself
    double timestamp = 0.0;
    double duration = 0.0;
    bool under_pressure = false;
    std::string play_pattern;
    int period = 1;

    nlohmann::json to_json() const;
    static ChainAction from_json(const nlohmann::json& j);
};

// Uninterrupted same-team action sequence ending in a shot.
struct PossessionChain {
    int match_id = 0;
    int chain_id = 0;  // 0-based per match, in shot order
    int team_id = 0;
    std::vector<ChainAction> actions;  // length K >= 1; last action is the shot
    bool ends_in_goal = false;
    ShotDetail shot;

    int label() const { return ends_in_goal ? 1 : 0; }
    const ChainAction& shot_action() const { return actions.back(); }
    std::string key() const {
        return std::to_string(match_id) + ":" + std::to_string(chain_id);
    }

    nlohmann::json to_json() const;
    static PossessionChain from_json(const nlohmann::json& j);
};

struct ChainExtractionReport {
    int shots_seen = 0;
    int chains_built = 0;
    int dropped_shots = 0;           // shot had no location
    int skipped_actions = 0;         // on-ball action had no location, absorbed

    void merge(const ChainExtractionReport& other);
};

// Segments one match's ordered events into possession chains. A chain is
// the maximal run of same-team Pass/Carry/Dribble actions ending in that
// team's shot. The run is cut by: a period change, a possession_id change,
// any opposing Pass/Carry/Dribble/Shot, an opposing Interception or
// Clearance, or an opposing Duel whose outcome reads as won. BallReceipt
// and all remaining kinds are absorbed without effect; an earlier shot
// closes its chain so a second shot in the same possession starts fresh.
std::vector<PossessionChain> extract_chains(const std::vector<Event>& events,
                                            ChainExtractionReport* report = nullptr);

// True when `outcome` marks a duel the acting side won ("Won", "Success In
// Play", ...), case-insensitive.
bool duel_won(const std::string& outcome);

}  // namespace chainscore
