#include "chainscore/team.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "chainscore/util/csv.hpp"

namespace chainscore {

namespace {

nlohmann::json member_json(const TeamMember& m) {
    return {{"player_id", m.player_id},
            {"name", m.name},
            {"team", m.team_name},
            {"position", m.raw_position},
            {"position_group", position_group_name(m.group)},
            {"normalized_score", m.normalized_score},
            {"games_played", m.games_played}};
}

std::string format_score(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

nlohmann::json SymbolicTeam::to_json() const {
    nlohmann::json j;
    j["formation"] = "4-3-3";
    for (const auto& [key, group] : std::initializer_list<
             std::pair<const char*, const std::vector<TeamMember>*>>{
             {"defenders", &defenders}, {"midfielders", &midfielders}, {"strikers", &strikers}}) {
        nlohmann::json rows = nlohmann::json::array();
        for (const TeamMember& m : *group) rows.push_back(member_json(m));
        j[key] = rows;
    }
    return j;
}

std::string SymbolicTeam::to_markdown() const {
    std::string out = "# Symbolic team (4-3-3)\n\n";
    out += "| Slot | Player | Team | Position | Score/game | Games |\n";
    out += "|---|---|---|---|---|---|\n";
    const auto rows = [&out](const char* slot, const std::vector<TeamMember>& group) {
        for (const TeamMember& m : group) {
            out += "| " + std::string(slot) + " | " + m.name + " | " + m.team_name + " | " +
                   m.raw_position + " | " + format_score(m.normalized_score) + " | " +
                   std::to_string(m.games_played) + " |\n";
        }
    };
    rows("Defender", defenders);
    rows("Midfielder", midfielders);
    rows("Striker", strikers);
    return out;
}

SymbolicTeam select_symbolic_team(const std::vector<PlayerScore>& scores,
                                  const std::vector<PlayerProfile>& profiles, int min_games,
                                  const std::vector<std::string>& team_allowlist) {
    std::map<int, const PlayerProfile*> profile_by_id;
    for (const PlayerProfile& p : profiles) profile_by_id[p.player_id] = &p;
    const std::set<std::string> allowed(team_allowlist.begin(), team_allowlist.end());

    std::map<PositionGroup, std::vector<TeamMember>> pools;
    for (const PlayerScore& score : scores) {
        const auto it = profile_by_id.find(score.player_id);
        if (it == profile_by_id.end()) continue;
        const PlayerProfile& profile = *it->second;
        if (profile.group == PositionGroup::Goalkeeper) continue;
        if (score.games_played < min_games) continue;
        if (!allowed.empty() && !allowed.count(profile.team_name)) continue;
        pools[profile.group].push_back({profile.player_id, profile.name, profile.team_name,
                                        profile.raw_position, profile.group, score.normalized,
                                        score.games_played});
    }

    const auto take = [&](PositionGroup group, std::size_t count) {
        std::vector<TeamMember>& pool = pools[group];
        if (pool.size() < count) {
            throw std::runtime_error("not enough eligible players for group " +
                                     position_group_name(group) + ": need " +
                                     std::to_string(count) + ", have " +
                                     std::to_string(pool.size()));
        }
        std::sort(pool.begin(), pool.end(), [](const TeamMember& a, const TeamMember& b) {
            if (a.normalized_score != b.normalized_score) {
                return a.normalized_score > b.normalized_score;
            }
            if (a.games_played != b.games_played) return a.games_played > b.games_played;
            return a.name < b.name;
        });
        pool.resize(count);
        return pool;
    };

    SymbolicTeam team;
    team.defenders = take(PositionGroup::Defender, 4);
    team.midfielders = take(PositionGroup::Midfielder, 3);
    team.strikers = take(PositionGroup::Striker, 3);
    return team;
}

std::vector<PlayerReportRow> player_report(const std::vector<std::string>& requested,
                                           const std::vector<PlayerScore>& scores,
                                           const std::vector<PlayerProfile>& profiles,
                                           const ModelArtifact& transfer_model,
                                           const Dataset& transfer_rows,
                                           const std::vector<TransferRowDetail>& details) {
    std::map<std::string, const PlayerProfile*> by_norm_name;
    for (const PlayerProfile& p : profiles) {
        by_norm_name.emplace(normalize_name(p.name), &p);
        if (!p.nickname.empty()) by_norm_name.emplace(normalize_name(p.nickname), &p);
    }
    std::map<int, const PlayerScore*> score_by_id;
    for (const PlayerScore& s : scores) score_by_id[s.player_id] = &s;
    std::map<int, std::size_t> dataset_row_by_id;
    for (std::size_t r = 0; r < transfer_rows.n_rows(); ++r) {
        dataset_row_by_id[std::stoi(transfer_rows.row_id(r))] = r;
    }
    std::map<int, const TransferRowDetail*> detail_by_id;
    for (const TransferRowDetail& d : details) detail_by_id[d.player_id] = &d;

    std::vector<PlayerReportRow> out;
    for (const std::string& name : requested) {
        PlayerReportRow row;
        row.requested_name = name;
        const auto it = by_norm_name.find(normalize_name(name));
        if (it == by_norm_name.end()) {
            out.push_back(std::move(row));  // unlinked marker row
            continue;
        }
        const PlayerProfile& profile = *it->second;
        row.name = profile.name;
        row.team_name = profile.team_name;
        row.raw_position = profile.raw_position;
        if (const auto s = score_by_id.find(profile.player_id); s != score_by_id.end()) {
            row.normalized_score = s->second->normalized;
            row.games_played = s->second->games_played;
        }
        if (const auto r = dataset_row_by_id.find(profile.player_id);
            r != dataset_row_by_id.end()) {
            row.linked = true;
            row.predicted_change_millions =
                predict_fee_change(transfer_model, transfer_rows.row(r->second));
            row.realized_change_millions = transfer_rows.target(r->second);
        } else if (const auto d = detail_by_id.find(profile.player_id); d != detail_by_id.end()) {
            row.linked = true;
            row.realized_change_millions = d->second->realized_change_millions;
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string player_report_csv(const std::vector<PlayerReportRow>& rows) {
    std::string out =
        "requested_name,status,name,team,position,score_per_game,games,"
        "predicted_change_millions,realized_change_millions\n";
    char buf[64];
    const auto number = [&buf](std::optional<double> v) -> std::string {
        if (!v) return "";
        std::snprintf(buf, sizeof(buf), "%.17g", *v);
        return buf;
    };
    for (const PlayerReportRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.normalized_score);
        const std::string score = buf;
        out += csv_escape(r.requested_name) + "," + (r.linked ? "linked" : "unlinked") + "," +
               csv_escape(r.name) + "," + csv_escape(r.team_name) + "," +
               csv_escape(r.raw_position) + "," + score + "," + std::to_string(r.games_played) +
               "," + number(r.predicted_change_millions) + "," +
               number(r.realized_change_millions) + "\n";
    }
    return out;
}

}  // namespace chainscore
