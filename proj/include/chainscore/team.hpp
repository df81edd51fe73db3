#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/ingest.hpp"
#include "chainscore/transfer.hpp"
#include "chainscore/valuation.hpp"

namespace chainscore {

struct TeamMember {
    int player_id = -1;
    std::string name;
    std::string team_name;
    std::string raw_position;
    PositionGroup group = PositionGroup::Midfielder;
    double normalized_score = 0.0;
    int games_played = 0;
};

// Best-per-position 4-3-3 outfield selection (no goalkeeper slot; keepers
// cannot earn credits under this scheme).
struct SymbolicTeam {
    std::vector<TeamMember> defenders;    // exactly 4
    std::vector<TeamMember> midfielders;  // exactly 3
    std::vector<TeamMember> strikers;     // exactly 3

    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

// Top players per group by normalized score, ties broken by more games then
// by name; only players with games_played >= min_games are eligible, and an
// optional team allowlist restricts the pool. Throws naming the group when
// a group cannot be filled.
SymbolicTeam select_symbolic_team(const std::vector<PlayerScore>& scores,
                                  const std::vector<PlayerProfile>& profiles, int min_games = 3,
                                  const std::vector<std::string>& team_allowlist = {});

struct PlayerReportRow {
    std::string requested_name;
    bool linked = false;
    std::string name;
    std::string team_name;
    std::string raw_position;
    double normalized_score = 0.0;
    int games_played = 0;
    std::optional<double> predicted_change_millions;
    std::optional<double> realized_change_millions;
};

// One row per requested player name (matched against profile names and
// nicknames, normalized). Unlinked or unmatched players yield marker rows
// rather than errors.
std::vector<PlayerReportRow> player_report(const std::vector<std::string>& requested,
                                           const std::vector<PlayerScore>& scores,
                                           const std::vector<PlayerProfile>& profiles,
                                           const ModelArtifact& transfer_model,
                                           const Dataset& transfer_rows,
                                           const std::vector<TransferRowDetail>& details);

std::string player_report_csv(const std::vector<PlayerReportRow>& rows);

}  // namespace chainscore
