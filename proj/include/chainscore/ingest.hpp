#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chainscore/geometry.hpp"
#include "chainscore/util/dates.hpp"

namespace chainscore {

enum class EventType { Pass, Carry, Dribble, Shot, Interception, Clearance, Duel, BallReceipt, Other };

std::string event_type_name(EventType t);
EventType event_type_from_name(const std::string& name);

// Maps a raw event-kind string ("Pass", "Ball Receipt*", "Pressure", ...)
// onto the normalized enum; anything unrecognized becomes Other.
EventType classify_event_kind(const std::string& kind);

struct ShotDetail {
    std::string technique;
    std::string body_part;
    std::string shot_type;
    bool is_goal = false;

    bool operator==(const ShotDetail&) const = default;
};

// One normalized in-match action record.
struct Event {
    int match_id = 0;
    int event_index = 0;  // 0-based order within the match
    int period = 1;
    int team_id = 0;
    int player_id = -1;  // -1 when the record names no player
    std::string player_name;
    EventType type = EventType::Other;
    std::string other_kind;  // original kind string when type == Other
    std::optional<BallState> location;
    double timestamp = 0.0;  // seconds from period start
    double duration = 0.0;
    bool under_pressure = false;
    std::string play_pattern;
    int possession_id = 0;
    std::string outcome;  // empty when the record has none
    std::optional<ShotDetail> shot;

    nlohmann::json to_json() const;
    static Event from_json(const nlohmann::json& j);
};

struct MatchInfo {
    int match_id = 0;
    Date date;
    int competition_id = 0;
    int season_id = 0;
    int home_team_id = 0;
    std::string home_team;
    int away_team_id = 0;
    std::string away_team;

    nlohmann::json to_json() const;
    static MatchInfo from_json(const nlohmann::json& j);
};

// Walks matches/{competition}/{season}.json for each requested pair.
// Missing index file -> error "competition index not found: ...".
std::vector<MatchInfo> load_match_index(const std::string& data_root,
                                        const std::vector<std::pair<int, int>>& competitions);
std::vector<int> load_matches(const std::string& data_root,
                              const std::vector<std::pair<int, int>>& competitions);

struct EventLoadReport {
    int raw_shot_rows = 0;
    int parsed_shot_rows = 0;
    int out_of_bounds_locations = 0;
    std::vector<std::string> skipped;  // record-level errors, one line each

    void merge(const EventLoadReport& other);
};

// Parses events/{match_id}.json in file order, assigning event_index
// 0..n-1 to the kept records. Shots missing technique/body part/type or
// outcome are skipped and reported; locations outside the 120x80 pitch are
// cleared and counted.
std::vector<Event> load_events(const std::string& data_root, int match_id,
                               EventLoadReport* report);

struct LineupPlayer {
    int player_id = 0;
    std::string name;
    std::string nickname;
    int team_id = 0;
    std::string team_name;
    std::vector<std::string> positions;  // position names in play order

    bool played() const { return !positions.empty(); }
};

std::vector<LineupPlayer> load_lineup(const std::string& data_root, int match_id);

enum class PositionGroup { Defender, Midfielder, Striker, Goalkeeper };

std::string position_group_name(PositionGroup g);
PositionGroup position_group_from_name(const std::string& name);

// Fixed mapping from raw position strings: "Goalkeeper" -> Goalkeeper,
// then substring "Back" -> Defender, "Midfield" -> Midfielder,
// "Forward"/"Wing"/"Striker"/"Attack" -> Striker, "Defender" -> Defender.
// Anything else falls back to Midfielder with *known set to false.
PositionGroup position_group_of(const std::string& raw_position, bool* known = nullptr);

// Aggregated per-player profile over the selected matches (players.jsonl).
struct PlayerProfile {
    int player_id = 0;
    std::string name;
    std::string nickname;
    int team_id = 0;
    std::string team_name;
    int games_played = 0;
    std::string raw_position;  // modal starting position, "Unknown" if never listed
    PositionGroup group = PositionGroup::Midfielder;
    bool group_known = true;
    long long linked_valuation_id = -1;  // -1 until link_players fills it

    nlohmann::json to_json() const;
    static PlayerProfile from_json(const nlohmann::json& j);
};

// Merges lineups (authoritative for names/positions) with event
// participation (fallback appearance evidence). A player counts as having
// played a match if the lineup lists at least one position for it or any
// event names the player. Modal starting position breaks ties
// alphabetically.
std::vector<PlayerProfile> build_player_profiles(
    const std::vector<std::vector<LineupPlayer>>& lineups_per_match,
    const std::vector<std::vector<Event>>& events_per_match);

struct ValuationRecord {
    long long player_id = 0;
    Date date;
    long long market_value_eur = 0;
};

struct ValuationLoad {
    std::map<long long, std::vector<ValuationRecord>> by_player;  // date-ascending
    int skipped_rows = 0;
};

// player_valuations.csv: player_id, date, market_value_in_eur. Rows with
// unparseable cells are skipped and counted; duplicate (player, date) rows
// collapse keeping the last.
ValuationLoad load_valuations(const std::string& csv_path);

struct PlayerMeta {
    long long player_id = 0;
    std::string name;
    Date birth_date;
    PositionGroup group = PositionGroup::Midfielder;
    std::string raw_position;
};

struct MetaLoad {
    std::map<long long, PlayerMeta> by_player;
    int skipped_rows = 0;
};

// players.csv: player_id, name, date_of_birth, position.
MetaLoad load_player_meta(const std::string& csv_path);

// Lowercases ASCII, strips Latin-1/Latin-Extended-A diacritics, collapses
// runs of whitespace/hyphens to single spaces, trims.
std::string normalize_name(const std::string& name);

struct LinkOutcome {
    struct Unmatched {
        int player_id = 0;
        std::string name;
        std::string reason;
    };
    std::map<int, long long> links;  // statsbomb player_id -> valuation player_id
    std::vector<Unmatched> unmatched;
    int overrides_applied = 0;

    nlohmann::json report() const;
};

// Exact normalized-name matching (name or nickname) with a manual override
// map keyed by the raw event-data name. Zero or >=2 candidates -> unmatched
// with a reason, never guessed.
LinkOutcome link_players(const std::vector<PlayerProfile>& players,
                         const std::map<long long, PlayerMeta>& meta,
                         const std::map<std::string, long long>& overrides);

}  // namespace chainscore
