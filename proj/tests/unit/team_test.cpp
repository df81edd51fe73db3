#include <map>
#include <string>
#include <vector>

#include <doctest.h>

#include "chainscore/team.hpp"

using namespace chainscore;

namespace {

PlayerScore make_score(int player_id, double normalized, int games) {
    PlayerScore s;
    s.player_id = player_id;
    s.games_played = games;
    s.total = normalized * games;
    s.normalized = normalized;
    return s;
}

PlayerProfile make_profile(int player_id, const std::string& name, PositionGroup group,
                           const std::string& team = "Italy",
                           const std::string& raw_position = "") {
    PlayerProfile p;
    p.player_id = player_id;
    p.name = name;
    p.group = group;
    p.team_name = team;
    p.raw_position = raw_position.empty() ? position_group_name(group) : raw_position;
    return p;
}

// Eleven-plus player pool with a clear ranking inside each position group.
struct Squad {
    std::vector<PlayerScore> scores;
    std::vector<PlayerProfile> profiles;

    void add(int id, const std::string& name, PositionGroup group, double normalized, int games,
             const std::string& team = "Italy") {
        scores.push_back(make_score(id, normalized, games));
        profiles.push_back(make_profile(id, name, group, team));
    }
};

Squad default_squad() {
    Squad s;
    s.add(1, "Def One", PositionGroup::Defender, 3.0, 5);
    s.add(2, "Def Two", PositionGroup::Defender, 2.0, 5);
    s.add(3, "Def Three", PositionGroup::Defender, 1.0, 5);
    s.add(4, "Def Four", PositionGroup::Defender, 0.0, 5);
    s.add(5, "Def Five", PositionGroup::Defender, -1.0, 5);
    s.add(6, "Mid One", PositionGroup::Midfielder, 2.5, 5);
    s.add(7, "Mid Two", PositionGroup::Midfielder, 1.5, 5);
    s.add(8, "Mid Three", PositionGroup::Midfielder, 0.5, 5);
    s.add(9, "Mid Four", PositionGroup::Midfielder, 0.1, 5);
    s.add(10, "Fwd One", PositionGroup::Striker, 4.0, 5);
    s.add(11, "Fwd Two", PositionGroup::Striker, 3.5, 5);
    s.add(12, "Fwd Three", PositionGroup::Striker, 3.1, 5);
    s.add(13, "Fwd Four", PositionGroup::Striker, 2.9, 5);
    return s;
}

std::vector<int> member_ids(const std::vector<TeamMember>& members) {
    std::vector<int> ids;
    for (const auto& m : members) ids.push_back(m.player_id);
    return ids;
}

}  // namespace

TEST_CASE("the best four defenders make the back line in score order") {
    const Squad squad = default_squad();
    const SymbolicTeam team = select_symbolic_team(squad.scores, squad.profiles, 3);

    CHECK(member_ids(team.defenders) == std::vector<int>{1, 2, 3, 4});
    CHECK(member_ids(team.midfielders) == std::vector<int>{6, 7, 8});
    CHECK(member_ids(team.strikers) == std::vector<int>{10, 11, 12});
    CHECK(team.defenders.size() == 4);
    CHECK(team.midfielders.size() == 3);
    CHECK(team.strikers.size() == 3);
}

TEST_CASE("players short of the appearance floor are out, even the best one") {
    Squad squad = default_squad();
    squad.scores[9].games_played = 2;  // Fwd One, the top striker, played too little
    const SymbolicTeam team = select_symbolic_team(squad.scores, squad.profiles, 3);
    CHECK(member_ids(team.strikers) == std::vector<int>{11, 12, 13});
}

TEST_CASE("score ties fall back to games played, then to the name") {
    Squad squad;
    squad.add(1, "Zed", PositionGroup::Defender, 1.0, 6);
    squad.add(2, "Alice", PositionGroup::Defender, 1.0, 4);   // fewer games than Zed
    squad.add(3, "Bob", PositionGroup::Defender, 1.0, 4);     // ties Alice, later name
    squad.add(4, "Carol", PositionGroup::Defender, 0.5, 9);
    squad.add(5, "Dave", PositionGroup::Defender, 0.4, 9);
    squad.add(6, "Mid A", PositionGroup::Midfielder, 1.0, 5);
    squad.add(7, "Mid B", PositionGroup::Midfielder, 1.0, 5);
    squad.add(8, "Mid C", PositionGroup::Midfielder, 1.0, 5);
    squad.add(9, "Fwd A", PositionGroup::Striker, 1.0, 5);
    squad.add(10, "Fwd B", PositionGroup::Striker, 1.0, 5);
    squad.add(11, "Fwd C", PositionGroup::Striker, 1.0, 5);

    const SymbolicTeam team = select_symbolic_team(squad.scores, squad.profiles, 3);
    CHECK(member_ids(team.defenders) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("goalkeepers never enter the outfield pools") {
    Squad squad = default_squad();
    squad.add(50, "Golden Gloves", PositionGroup::Goalkeeper, 99.0, 7);
    const SymbolicTeam team = select_symbolic_team(squad.scores, squad.profiles, 3);
    for (const auto* group : {&team.defenders, &team.midfielders, &team.strikers}) {
        for (const auto& m : *group) CHECK(m.player_id != 50);
    }
}

TEST_CASE("an unfillable slot names its position group") {
    Squad squad = default_squad();
    squad.scores[10].games_played = 1;  // Fwd Two
    squad.scores[11].games_played = 1;  // Fwd Three
    CHECK_THROWS_WITH_AS(select_symbolic_team(squad.scores, squad.profiles, 3),
                         "not enough eligible players for group Striker: need 3, have 2",
                         std::runtime_error);
}

TEST_CASE("a team allowlist restricts the candidate pool") {
    Squad squad = default_squad();
    squad.add(60, "Foreign Star", PositionGroup::Striker, 9.0, 6, "Brazil");
    const SymbolicTeam unrestricted = select_symbolic_team(squad.scores, squad.profiles, 3);
    CHECK(member_ids(unrestricted.strikers) == std::vector<int>{60, 10, 11});

    const SymbolicTeam restricted =
        select_symbolic_team(squad.scores, squad.profiles, 3, {"Italy"});
    CHECK(member_ids(restricted.strikers) == std::vector<int>{10, 11, 12});
}

TEST_CASE("rescaling every score leaves the selection unchanged") {
    Squad squad = default_squad();
    const SymbolicTeam base = select_symbolic_team(squad.scores, squad.profiles, 3);

    Squad scaled = squad;
    for (auto& s : scaled.scores) {
        s.normalized *= 3.7;
        s.total *= 3.7;
    }
    const SymbolicTeam rescaled = select_symbolic_team(scaled.scores, scaled.profiles, 3);

    CHECK(member_ids(base.defenders) == member_ids(rescaled.defenders));
    CHECK(member_ids(base.midfielders) == member_ids(rescaled.midfielders));
    CHECK(member_ids(base.strikers) == member_ids(rescaled.strikers));
}

TEST_CASE("the team serializes with formation and full member records") {
    const Squad squad = default_squad();
    const SymbolicTeam team = select_symbolic_team(squad.scores, squad.profiles, 3);

    const nlohmann::json j = team.to_json();
    CHECK(j.at("formation").get<std::string>() == "4-3-3");
    REQUIRE(j.at("defenders").size() == 4);
    REQUIRE(j.at("midfielders").size() == 3);
    REQUIRE(j.at("strikers").size() == 3);
    const auto& first = j.at("defenders").at(0);
    CHECK(first.at("player_id").get<int>() == 1);
    CHECK(first.at("name").get<std::string>() == "Def One");
    CHECK(first.at("team").get<std::string>() == "Italy");
    CHECK(first.at("position_group").get<std::string>() == "Defender");
    CHECK(first.at("normalized_score").get<double>() == doctest::Approx(3.0));
    CHECK(first.at("games_played").get<int>() == 5);

    const std::string md = team.to_markdown();
    CHECK(md.rfind("# Symbolic team (4-3-3)", 0) == 0);
    CHECK(md.find("| Slot | Player | Team | Position | Score/game | Games |") != std::string::npos);
    CHECK(md.find("| Defender | Def One |") != std::string::npos);
    CHECK(md.find("| Striker | Fwd Three |") != std::string::npos);
}

namespace {

// A tiny fee-model universe for the report tests: two rows in the transfer
// data (players 1 and 2), one detail-only outcome (player 3).
struct ReportFixture {
    std::vector<PlayerScore> scores;
    std::vector<PlayerProfile> profiles;
    Dataset rows{};
    std::vector<TransferRowDetail> details;
    ModelArtifact model;
};

ReportFixture report_fixture() {
    ReportFixture f;
    f.scores = {make_score(1, 0.6, 3), make_score(2, 0.4, 4), make_score(3, 0.2, 2)};
    f.profiles = {
        make_profile(1, "Andrea Belotti", PositionGroup::Striker, "Italy", "Center Forward"),
        make_profile(2, "Jorge Luiz Frello Filho", PositionGroup::Midfielder, "Italy",
                     "Center Defensive Midfield"),
        make_profile(3, "Ondrej Celustka", PositionGroup::Defender, "Czech Republic",
                     "Right Center Back"),
    };
    f.profiles[1].nickname = "Jorginho";
    f.profiles[0].linked_valuation_id = 500;
    f.profiles[1].linked_valuation_id = 501;

    const std::map<long long, std::vector<ValuationRecord>> valuations = {
        {500, {{500, {2021, 5, 1}, 5000000}, {500, {2021, 9, 1}, 12000000}}},
        {501, {{501, {2021, 5, 1}, 40000000}, {501, {2021, 9, 1}, 45000000}}},
    };
    const std::map<long long, PlayerMeta> meta = {
        {500, {500, "Andrea Belotti", {1993, 12, 20}, PositionGroup::Striker, "Attack"}},
        {501, {501, "Jorginho", {1991, 12, 20}, PositionGroup::Midfielder, "Midfield"}},
    };
    f.rows = build_transfer_dataset({f.scores[0], f.scores[1]}, f.profiles, valuations, meta,
                                    {{2021, 6, 1}, {2021, 7, 1}}, nullptr, &f.details);
    f.details.push_back({3, "Ondrej Celustka", -0.05, {2021, 5, 1}, {2021, 9, 1}});
    f.model =
        fit_with_params(Algorithm::DecisionTree, Task::Regress, f.rows, {{"max_depth", 0}}, 1.0, 3);
    return f;
}

}  // namespace

TEST_CASE("the player report answers every requested name in order") {
    const ReportFixture f = report_fixture();
    const auto rows = player_report({"Andrea Belotti", "jorginho", "Ondřej Čelůstka", "Martians"},
                                    f.scores, f.profiles, f.model, f.rows, f.details);

    REQUIRE(rows.size() == 4);

    CHECK(rows[0].requested_name == "Andrea Belotti");
    CHECK(rows[0].linked);
    CHECK(rows[0].name == "Andrea Belotti");
    CHECK(rows[0].team_name == "Italy");
    CHECK(rows[0].raw_position == "Center Forward");
    CHECK(rows[0].normalized_score == doctest::Approx(0.6));
    CHECK(rows[0].games_played == 3);
    REQUIRE(rows[0].predicted_change_millions.has_value());
    CHECK(*rows[0].predicted_change_millions == doctest::Approx(6.0));  // stump: mean of +7, +5
    REQUIRE(rows[0].realized_change_millions.has_value());
    CHECK(*rows[0].realized_change_millions == doctest::Approx(7.0));

    // Nicknames resolve case-insensitively.
    CHECK(rows[1].linked);
    CHECK(rows[1].name == "Jorge Luiz Frello Filho");
    CHECK(*rows[1].realized_change_millions == doctest::Approx(5.0));

    // Diacritics in the request fold onto the plain profile name; the
    // outcome comes from the detail record since the player has no feature row.
    CHECK(rows[2].linked);
    CHECK(rows[2].name == "Ondrej Celustka");
    CHECK_FALSE(rows[2].predicted_change_millions.has_value());
    REQUIRE(rows[2].realized_change_millions.has_value());
    CHECK(*rows[2].realized_change_millions == doctest::Approx(-0.05));

    // Unknown names yield a marker row, not an error.
    CHECK_FALSE(rows[3].linked);
    CHECK(rows[3].requested_name == "Martians");
    CHECK(rows[3].name.empty());
    CHECK_FALSE(rows[3].predicted_change_millions.has_value());
    CHECK_FALSE(rows[3].realized_change_millions.has_value());
}

TEST_CASE("an empty request list reports nothing") {
    const ReportFixture f = report_fixture();
    CHECK(player_report({}, f.scores, f.profiles, f.model, f.rows, f.details).empty());
}

TEST_CASE("the report renders as csv with empty cells for unknown outcomes") {
    const ReportFixture f = report_fixture();
    const auto rows =
        player_report({"Andrea Belotti", "Martians"}, f.scores, f.profiles, f.model, f.rows,
                      f.details);
    const std::string csv = player_report_csv(rows);

    CHECK(csv.rfind("requested_name,status,name,team,position,score_per_game,games,"
                    "predicted_change_millions,realized_change_millions\n",
                    0) == 0);
    CHECK(csv.find("Andrea Belotti,linked,Andrea Belotti,Italy,Center Forward,") !=
          std::string::npos);
    CHECK(csv.find(",7\n") != std::string::npos);          // realized change, %.17g prints 7
    CHECK(csv.find("Martians,unlinked,,,,0,0,,\n") != std::string::npos);
}
