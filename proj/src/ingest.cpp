#include "chainscore/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "chainscore/util/csv.hpp"
#include "chainscore/util/io.hpp"

namespace chainscore {

namespace {

const char* kEventTypeNames[] = {"Pass",         "Carry", "Dribble", "Shot", "Interception",
                                 "Clearance",    "Duel",  "BallReceipt", "Other"};

bool contains(const std::string& haystack, const char* needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

std::string event_type_name(EventType t) { return kEventTypeNames[static_cast<int>(t)]; }

EventType event_type_from_name(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(EventType::Other); ++i) {
        if (name == kEventTypeNames[i]) return static_cast<EventType>(i);
    }
    throw std::runtime_error("unknown event type: " + name);
}

EventType classify_event_kind(const std::string& kind) {
    if (kind == "Pass") return EventType::Pass;
    if (kind == "Carry") return EventType::Carry;
    if (kind == "Dribble") return EventType::Dribble;
    if (kind == "Shot") return EventType::Shot;
    if (kind == "Interception") return EventType::Interception;
    if (kind == "Clearance") return EventType::Clearance;
    if (kind == "Duel") return EventType::Duel;
    if (kind.rfind("Ball Receipt", 0) == 0) return EventType::BallReceipt;
    return EventType::Other;
}

nlohmann::json Event::to_json() const {
    nlohmann::json j;
    j["match_id"] = match_id;
    j["event_index"] = event_index;
    j["period"] = period;
    j["team_id"] = team_id;
    j["player_id"] = player_id < 0 ? nlohmann::json() : nlohmann::json(player_id);
    j["player_name"] = player_name;
    j["type"] = event_type_name(type);
    j["kind"] = type == EventType::Other ? nlohmann::json(other_kind) : nlohmann::json();
    j["location"] =
        location ? nlohmann::json{location->x, location->y} : nlohmann::json();
    j["timestamp"] = timestamp;
    j["duration"] = duration;
    j["under_pressure"] = under_pressure;
    j["play_pattern"] = play_pattern;
    j["possession_id"] = possession_id;
    j["outcome"] = outcome.empty() ? nlohmann::json() : nlohmann::json(outcome);
    if (shot) {
        j["shot"] = {{"technique", shot->technique},
                     {"body_part", shot->body_part},
                     {"shot_type", shot->shot_type},
                     {"is_goal", shot->is_goal}};
    } else {
        j["shot"] = nlohmann::json();
    }
    return j;
}

Event Event::from_json(const nlohmann::json& j) {
    Event e;
    e.match_id = j.at("match_id").get<int>();
    e.event_index = j.at("event_index").get<int>();
    e.period = j.at("period").get<int>();
    e.team_id = j.at("team_id").get<int>();
    e.player_id = j.at("player_id").is_null() ? -1 : j.at("player_id").get<int>();
    e.player_name = j.at("player_name").get<std::string>();
    e.type = event_type_from_name(j.at("type").get<std::string>());
    if (!j.at("kind").is_null()) e.other_kind = j.at("kind").get<std::string>();
    if (!j.at("location").is_null()) {
        e.location = BallState{j.at("location")[0].get<double>(), j.at("location")[1].get<double>()};
    }
    e.timestamp = j.at("timestamp").get<double>();
    e.duration = j.at("duration").get<double>();
    e.under_pressure = j.at("under_pressure").get<bool>();
    e.play_pattern = j.at("play_pattern").get<std::string>();
    e.possession_id = j.at("possession_id").get<int>();
    if (!j.at("outcome").is_null()) e.outcome = j.at("outcome").get<std::string>();
    if (!j.at("shot").is_null()) {
        const auto& s = j.at("shot");
        e.shot = ShotDetail{s.at("technique").get<std::string>(),
                            s.at("body_part").get<std::string>(),
                            s.at("shot_type").get<std::string>(), s.at("is_goal").get<bool>()};
    }
    return e;
}

nlohmann::json MatchInfo::to_json() const {
    return {{"match_id", match_id},
            {"date", date.to_string()},
            {"competition_id", competition_id},
            {"season_id", season_id},
            {"home_team_id", home_team_id},
            {"home_team", home_team},
            {"away_team_id", away_team_id},
            {"away_team", away_team}};
}

MatchInfo MatchInfo::from_json(const nlohmann::json& j) {
    MatchInfo m;
    m.match_id = j.at("match_id").get<int>();
    if (!parse_date(j.at("date").get<std::string>(), m.date)) {
        throw std::runtime_error("bad match date: " + j.at("date").get<std::string>());
    }
    m.competition_id = j.at("competition_id").get<int>();
    m.season_id = j.at("season_id").get<int>();
    m.home_team_id = j.at("home_team_id").get<int>();
    m.home_team = j.at("home_team").get<std::string>();
    m.away_team_id = j.at("away_team_id").get<int>();
    m.away_team = j.at("away_team").get<std::string>();
    return m;
}

std::vector<MatchInfo> load_match_index(const std::string& data_root,
                                        const std::vector<std::pair<int, int>>& competitions) {
    std::vector<MatchInfo> out;
    for (const auto& [competition_id, season_id] : competitions) {
        const std::string rel = "matches/" + std::to_string(competition_id) + "/" +
                                std::to_string(season_id) + ".json";
        const std::string path = path_join(data_root, rel);
        if (!file_exists(path)) {
            throw std::runtime_error("competition index not found: " + path);
        }
        const nlohmann::json index = parse_json_file(path);
        if (!index.is_array()) {
            throw std::runtime_error("competition index is not a JSON array: " + path);
        }
        for (const auto& entry : index) {
            MatchInfo m;
            m.match_id = entry.at("match_id").get<int>();
            const std::string date_text = entry.at("match_date").get<std::string>();
            if (!parse_date(date_text, m.date)) {
                throw std::runtime_error("bad match_date '" + date_text + "' in " + path);
            }
            m.competition_id = competition_id;
            m.season_id = season_id;
            const auto& home = entry.at("home_team");
            const auto& away = entry.at("away_team");
            m.home_team_id = home.at("home_team_id").get<int>();
            m.home_team = home.at("home_team_name").get<std::string>();
            m.away_team_id = away.at("away_team_id").get<int>();
            m.away_team = away.at("away_team_name").get<std::string>();
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const MatchInfo& a, const MatchInfo& b) { return a.match_id < b.match_id; });
    return out;
}

std::vector<int> load_matches(const std::string& data_root,
                              const std::vector<std::pair<int, int>>& competitions) {
    std::vector<int> ids;
    for (const MatchInfo& m : load_match_index(data_root, competitions)) ids.push_back(m.match_id);
    return ids;
}

void EventLoadReport::merge(const EventLoadReport& other) {
    raw_shot_rows += other.raw_shot_rows;
    parsed_shot_rows += other.parsed_shot_rows;
    out_of_bounds_locations += other.out_of_bounds_locations;
    skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

namespace {

// "HH:MM:SS.mmm" -> seconds from period start.
double parse_clock(const std::string& text) {
    int h = 0, m = 0;
    double s = 0.0;
    if (std::sscanf(text.c_str(), "%d:%d:%lf", &h, &m, &s) != 3) {
        throw std::runtime_error("bad timestamp: " + text);
    }
    return h * 3600.0 + m * 60.0 + s;
}

// Pulls outcome.name from the type-specific detail block, if any.
std::string record_outcome(const nlohmann::json& record) {
    for (const char* block : {"shot", "duel", "interception", "dribble", "pass"}) {
        if (!record.contains(block)) continue;
        const auto& detail = record.at(block);
        if (detail.contains("outcome") && detail.at("outcome").contains("name")) {
            return detail.at("outcome").at("name").get<std::string>();
        }
    }
    return {};
}

}  // namespace

std::vector<Event> load_events(const std::string& data_root, int match_id,
                               EventLoadReport* report) {
    const std::string path = path_join(data_root, "events/" + std::to_string(match_id) + ".json");
    const nlohmann::json records = parse_json_file(path);
    if (!records.is_array()) {
        throw std::runtime_error("event file is not a JSON array: " + path);
    }

    const PitchSpec pitch;
    std::vector<Event> events;
    events.reserve(records.size());
    int raw_index = -1;
    for (const auto& record : records) {
        ++raw_index;
        Event e;
        e.match_id = match_id;
        e.period = record.value("period", 1);
        e.team_id = record.at("team").at("id").get<int>();
        if (record.contains("player")) {
            e.player_id = record.at("player").at("id").get<int>();
            e.player_name = record.at("player").value("name", "");
        }
        const std::string kind = record.at("type").at("name").get<std::string>();
        e.type = classify_event_kind(kind);
        if (e.type == EventType::Other) e.other_kind = kind;
        e.timestamp = parse_clock(record.at("timestamp").get<std::string>());
        e.duration = record.value("duration", 0.0);
        e.under_pressure = record.value("under_pressure", false);
        e.play_pattern = record.at("play_pattern").at("name").get<std::string>();
        e.possession_id = record.at("possession").get<int>();
        e.outcome = record_outcome(record);

        if (record.contains("location") && record.at("location").is_array() &&
            record.at("location").size() >= 2) {
            const BallState loc{record.at("location")[0].get<double>(),
                                record.at("location")[1].get<double>()};
            if (in_bounds(loc, pitch)) {
                e.location = loc;
            } else if (report) {
                ++report->out_of_bounds_locations;
            }
        }

        if (e.type == EventType::Shot) {
            if (report) ++report->raw_shot_rows;
            const auto& shot = record.contains("shot") ? record.at("shot") : nlohmann::json();
            std::string missing;
            for (const char* field : {"technique", "body_part", "type", "outcome"}) {
                if (!shot.contains(field) || !shot.at(field).contains("name")) {
                    missing = field;
                    break;
                }
            }
            if (!missing.empty()) {
                if (report) {
                    report->skipped.push_back("match " + std::to_string(match_id) + " record " +
                                              std::to_string(raw_index) + ": shot missing " +
                                              missing);
                }
                continue;  // record-level error; event skipped
            }
            ShotDetail detail;
            detail.technique = shot.at("technique").at("name").get<std::string>();
            detail.body_part = shot.at("body_part").at("name").get<std::string>();
            detail.shot_type = shot.at("type").at("name").get<std::string>();
            detail.is_goal = shot.at("outcome").at("name").get<std::string>() == "Goal";
            e.shot = detail;
            if (report) ++report->parsed_shot_rows;
        }

        e.event_index = static_cast<int>(events.size());
        events.push_back(std::move(e));
    }
    return events;
}

std::vector<LineupPlayer> load_lineup(const std::string& data_root, int match_id) {
    const std::string path = path_join(data_root, "lineups/" + std::to_string(match_id) + ".json");
    const nlohmann::json teams = parse_json_file(path);
    if (!teams.is_array()) {
        throw std::runtime_error("lineup file is not a JSON array: " + path);
    }
    std::vector<LineupPlayer> out;
    for (const auto& team : teams) {
        const int team_id = team.at("team_id").get<int>();
        const std::string team_name = team.at("team_name").get<std::string>();
        for (const auto& row : team.at("lineup")) {
            LineupPlayer p;
            p.player_id = row.at("player_id").get<int>();
            p.name = row.at("player_name").get<std::string>();
            if (row.contains("player_nickname") && !row.at("player_nickname").is_null()) {
                p.nickname = row.at("player_nickname").get<std::string>();
            }
            p.team_id = team_id;
            p.team_name = team_name;
            if (row.contains("positions")) {
                for (const auto& pos : row.at("positions")) {
                    p.positions.push_back(pos.at("position").get<std::string>());
                }
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::string position_group_name(PositionGroup g) {
    switch (g) {
        case PositionGroup::Defender: return "Defender";
        case PositionGroup::Midfielder: return "Midfielder";
        case PositionGroup::Striker: return "Striker";
        case PositionGroup::Goalkeeper: return "Goalkeeper";
    }
    return "?";
}

PositionGroup position_group_from_name(const std::string& name) {
    if (name == "Defender") return PositionGroup::Defender;
    if (name == "Midfielder") return PositionGroup::Midfielder;
    if (name == "Striker") return PositionGroup::Striker;
    if (name == "Goalkeeper") return PositionGroup::Goalkeeper;
    throw std::runtime_error("unknown position group: " + name);
}

PositionGroup position_group_of(const std::string& raw_position, bool* known) {
    if (known) *known = true;
    if (contains(raw_position, "Goalkeeper")) return PositionGroup::Goalkeeper;
    if (contains(raw_position, "Back")) return PositionGroup::Defender;
    if (contains(raw_position, "Midfield")) return PositionGroup::Midfielder;
    if (contains(raw_position, "Forward") || contains(raw_position, "Wing") ||
        contains(raw_position, "Striker") || contains(raw_position, "Attack")) {
        return PositionGroup::Striker;
    }
    if (contains(raw_position, "Defender")) return PositionGroup::Defender;
    if (known) *known = false;
    return PositionGroup::Midfielder;
}

nlohmann::json PlayerProfile::to_json() const {
    return {{"player_id", player_id},
            {"name", name},
            {"nickname", nickname},
            {"team_id", team_id},
            {"team_name", team_name},
            {"games_played", games_played},
            {"raw_position", raw_position},
            {"position_group", position_group_name(group)},
            {"position_known", group_known},
            {"linked_valuation_id",
             linked_valuation_id < 0 ? nlohmann::json() : nlohmann::json(linked_valuation_id)}};
}

PlayerProfile PlayerProfile::from_json(const nlohmann::json& j) {
    PlayerProfile p;
    p.player_id = j.at("player_id").get<int>();
    p.name = j.at("name").get<std::string>();
    p.nickname = j.at("nickname").get<std::string>();
    p.team_id = j.at("team_id").get<int>();
    p.team_name = j.at("team_name").get<std::string>();
    p.games_played = j.at("games_played").get<int>();
    p.raw_position = j.at("raw_position").get<std::string>();
    p.group = position_group_from_name(j.at("position_group").get<std::string>());
    p.group_known = j.at("position_known").get<bool>();
    if (!j.at("linked_valuation_id").is_null()) {
        p.linked_valuation_id = j.at("linked_valuation_id").get<long long>();
    }
    return p;
}

std::vector<PlayerProfile> build_player_profiles(
    const std::vector<std::vector<LineupPlayer>>& lineups_per_match,
    const std::vector<std::vector<Event>>& events_per_match) {
    struct Accum {
        std::string name;
        std::string nickname;
        int team_id = 0;
        std::string team_name;
        std::set<int> matches;  // match slots the player appeared in
        std::map<std::string, int> starting_positions;
    };
    std::map<int, Accum> by_player;

    for (std::size_t slot = 0; slot < lineups_per_match.size(); ++slot) {
        for (const LineupPlayer& p : lineups_per_match[slot]) {
            Accum& a = by_player[p.player_id];
            a.name = p.name;
            if (!p.nickname.empty()) a.nickname = p.nickname;
            a.team_id = p.team_id;
            a.team_name = p.team_name;
            if (p.played()) {
                a.matches.insert(static_cast<int>(slot));
                ++a.starting_positions[p.positions.front()];
            }
        }
    }
    for (std::size_t slot = 0; slot < events_per_match.size(); ++slot) {
        for (const Event& e : events_per_match[slot]) {
            if (e.player_id < 0) continue;
            Accum& a = by_player[e.player_id];
            if (a.name.empty()) {
                a.name = e.player_name;
                a.team_id = e.team_id;
            }
            a.matches.insert(static_cast<int>(slot));
        }
    }

    std::vector<PlayerProfile> out;
    out.reserve(by_player.size());
    for (const auto& [player_id, a] : by_player) {
        PlayerProfile p;
        p.player_id = player_id;
        p.name = a.name;
        p.nickname = a.nickname;
        p.team_id = a.team_id;
        p.team_name = a.team_name;
        p.games_played = static_cast<int>(a.matches.size());
        if (a.starting_positions.empty()) {
            p.raw_position = "Unknown";
        } else {
            // Mode; std::map iteration is alphabetical, so the first maximal
            // entry is the alphabetical tie-break.
            int best = 0;
            for (const auto& [pos, count] : a.starting_positions) {
                if (count > best) {
                    best = count;
                    p.raw_position = pos;
                }
            }
        }
        p.group = position_group_of(p.raw_position, &p.group_known);
        out.push_back(std::move(p));
    }
    return out;
}

ValuationLoad load_valuations(const std::string& csv_path) {
    const CsvTable table = read_csv(csv_path);
    ValuationLoad out;
    if (table.rows.empty()) return out;
    for (const char* col : {"player_id", "date", "market_value_in_eur"}) {
        if (!table.has_column(col)) {
            throw std::runtime_error(csv_path + ": missing column " + col);
        }
    }
    std::map<long long, std::map<Date, long long>> dedup;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            const long long player = std::stoll(table.cell(r, "player_id"));
            Date date;
            if (!parse_date(table.cell(r, "date"), date)) throw std::runtime_error("bad date");
            const long long value = std::stoll(table.cell(r, "market_value_in_eur"));
            if (value < 0) throw std::runtime_error("negative value");
            dedup[player][date] = value;  // duplicate dates keep the last row
        } catch (const std::exception&) {
            ++out.skipped_rows;
        }
    }
    for (const auto& [player, by_date] : dedup) {
        auto& series = out.by_player[player];
        for (const auto& [date, value] : by_date) series.push_back({player, date, value});
    }
    return out;
}

MetaLoad load_player_meta(const std::string& csv_path) {
    const CsvTable table = read_csv(csv_path);
    MetaLoad out;
    if (table.rows.empty()) return out;
    for (const char* col : {"player_id", "name", "date_of_birth", "position"}) {
        if (!table.has_column(col)) {
            throw std::runtime_error(csv_path + ": missing column " + col);
        }
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            PlayerMeta meta;
            meta.player_id = std::stoll(table.cell(r, "player_id"));
            meta.name = table.cell(r, "name");
            if (meta.name.empty()) throw std::runtime_error("empty name");
            if (!parse_date(table.cell(r, "date_of_birth"), meta.birth_date)) {
                throw std::runtime_error("bad date_of_birth");
            }
            meta.raw_position = table.cell(r, "position");
            meta.group = position_group_of(meta.raw_position);
            out.by_player[meta.player_id] = std::move(meta);
        } catch (const std::exception&) {
            ++out.skipped_rows;
        }
    }
    return out;
}

namespace {

// Latin-1 and Latin-Extended-A codepoints folded to ASCII. Ligatures and
// eszett expand to their two-letter spellings so "Mæhle" meets "Maehle".
const char* fold_codepoint(unsigned int cp) {
    if (cp == 0xC6 || cp == 0xE6) return "ae";
    if (cp == 0x152 || cp == 0x153) return "oe";
    if (cp == 0xDF) return "ss";
    if (cp == 0xDE || cp == 0xFE) return "th";
    if (cp >= 0xC0 && cp <= 0xC5) return "a";
    if (cp == 0xC7) return "c";
    if (cp >= 0xC8 && cp <= 0xCB) return "e";
    if (cp >= 0xCC && cp <= 0xCF) return "i";
    if (cp == 0xD0) return "d";
    if (cp == 0xD1) return "n";
    if ((cp >= 0xD2 && cp <= 0xD6) || cp == 0xD8) return "o";
    if (cp >= 0xD9 && cp <= 0xDC) return "u";
    if (cp == 0xDD) return "y";
    if (cp >= 0xE0 && cp <= 0xE5) return "a";
    if (cp == 0xE7) return "c";
    if (cp >= 0xE8 && cp <= 0xEB) return "e";
    if (cp >= 0xEC && cp <= 0xEF) return "i";
    if (cp == 0xF0) return "d";
    if (cp == 0xF1) return "n";
    if ((cp >= 0xF2 && cp <= 0xF6) || cp == 0xF8) return "o";
    if (cp >= 0xF9 && cp <= 0xFC) return "u";
    if (cp == 0xFD || cp == 0xFF) return "y";
    // Latin Extended-A, by base-letter ranges.
    if (cp >= 0x100 && cp <= 0x105) return "a";
    if (cp >= 0x106 && cp <= 0x10D) return "c";
    if (cp >= 0x10E && cp <= 0x111) return "d";
    if (cp >= 0x112 && cp <= 0x11B) return "e";
    if (cp >= 0x11C && cp <= 0x123) return "g";
    if (cp >= 0x124 && cp <= 0x127) return "h";
    if (cp >= 0x128 && cp <= 0x131) return "i";
    if (cp == 0x132 || cp == 0x133) return "ij";
    if (cp == 0x134 || cp == 0x135) return "j";
    if (cp >= 0x136 && cp <= 0x138) return "k";
    if (cp >= 0x139 && cp <= 0x142) return "l";
    if (cp >= 0x143 && cp <= 0x14B) return "n";
    if (cp >= 0x14C && cp <= 0x151) return "o";
    if (cp >= 0x154 && cp <= 0x159) return "r";
    if (cp >= 0x15A && cp <= 0x161) return "s";
    if (cp >= 0x162 && cp <= 0x167) return "t";
    if (cp >= 0x168 && cp <= 0x173) return "u";
    if (cp == 0x174 || cp == 0x175) return "w";
    if (cp >= 0x176 && cp <= 0x178) return "y";
    if (cp >= 0x179 && cp <= 0x17E) return "z";
    if (cp == 0x17F) return "s";
    return "";
}

}  // namespace

std::string normalize_name(const std::string& name) {
    std::string folded;
    folded.reserve(name.size());
    for (std::size_t i = 0; i < name.size();) {
        const unsigned char c = static_cast<unsigned char>(name[i]);
        unsigned int cp = 0;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < name.size()) {
            cp = ((c & 0x1F) << 6) | (static_cast<unsigned char>(name[i + 1]) & 0x3F);
            len = 2;
        } else if ((c >> 4) == 0xE && i + 2 < name.size()) {
            cp = ((c & 0x0F) << 12) | ((static_cast<unsigned char>(name[i + 1]) & 0x3F) << 6) |
                 (static_cast<unsigned char>(name[i + 2]) & 0x3F);
            len = 3;
        } else {
            len = 1;
            cp = '?';
        }
        i += len;

        if (cp < 0x80) {
            if (cp >= 'A' && cp <= 'Z') {
                folded.push_back(static_cast<char>(cp - 'A' + 'a'));
            } else if (cp == '-' || cp == '\t') {
                folded.push_back(' ');
            } else if (cp != '?') {
                folded.push_back(static_cast<char>(cp));
            }
        } else {
            folded += fold_codepoint(cp);
        }
    }

    // Collapse whitespace runs, trim ends.
    std::string result;
    bool pending_space = false;
    for (const char c : folded) {
        if (c == ' ') {
            pending_space = !result.empty();
        } else {
            if (pending_space) result.push_back(' ');
            pending_space = false;
            result.push_back(c);
        }
    }
    return result;
}

nlohmann::json LinkOutcome::report() const {
    nlohmann::json unmatched_json = nlohmann::json::array();
    for (const auto& u : unmatched) {
        unmatched_json.push_back(
            {{"player_id", u.player_id}, {"name", u.name}, {"reason", u.reason}});
    }
    return {{"linked", links.size()},
            {"unmatched", unmatched_json},
            {"overrides_applied", overrides_applied}};
}

LinkOutcome link_players(const std::vector<PlayerProfile>& players,
                         const std::map<long long, PlayerMeta>& meta,
                         const std::map<std::string, long long>& overrides) {
    std::map<std::string, std::set<long long>> by_norm;
    for (const auto& [id, m] : meta) by_norm[normalize_name(m.name)].insert(id);

    LinkOutcome out;
    for (const PlayerProfile& p : players) {
        if (const auto ov = overrides.find(p.name); ov != overrides.end()) {
            if (!meta.count(ov->second)) {
                out.unmatched.push_back(
                    {p.player_id, p.name,
                     "override names unknown valuation id " + std::to_string(ov->second)});
                continue;
            }
            out.links[p.player_id] = ov->second;
            ++out.overrides_applied;
            continue;
        }
        std::set<long long> candidates;
        for (const std::string& key : {normalize_name(p.name), normalize_name(p.nickname)}) {
            if (key.empty()) continue;
            if (const auto it = by_norm.find(key); it != by_norm.end()) {
                candidates.insert(it->second.begin(), it->second.end());
            }
        }
        if (candidates.size() == 1) {
            out.links[p.player_id] = *candidates.begin();
        } else if (candidates.empty()) {
            out.unmatched.push_back({p.player_id, p.name, "no match"});
        } else {
            out.unmatched.push_back({p.player_id, p.name,
                                     "ambiguous: " + std::to_string(candidates.size()) +
                                         " candidates share the normalized name"});
        }
    }
    return out;
}

}  // namespace chainscore
