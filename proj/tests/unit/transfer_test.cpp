#include <map>
#include <string>
#include <vector>

#include <doctest.h>

#include "chainscore/transfer.hpp"

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
                           long long linked_id) {
    PlayerProfile p;
    p.player_id = player_id;
    p.name = name;
    p.group = group;
    p.linked_valuation_id = linked_id;
    return p;
}

PlayerMeta make_meta(long long id, const std::string& name, Date born) {
    PlayerMeta m;
    m.player_id = id;
    m.name = name;
    m.birth_date = born;
    return m;
}

}  // namespace

TEST_CASE("a bracketed player becomes one row with exact window arithmetic") {
    const std::vector<PlayerScore> scores = {make_score(10, 0.42, 3)};
    const std::vector<PlayerProfile> profiles = {
        make_profile(10, "Andrea Belotti", PositionGroup::Striker, 500)};
    const std::map<long long, std::vector<ValuationRecord>> valuations = {
        {500, {{500, {2021, 5, 1}, 5000000}, {500, {2021, 9, 1}, 12000000}}}};
    const std::map<long long, PlayerMeta> meta = {
        {500, make_meta(500, "Andrea Belotti", {1993, 12, 20})}};
    const TransferWindow window{{2021, 6, 1}, {2021, 7, 11}};

    TransferBuildReport report;
    std::vector<TransferRowDetail> details;
    const Dataset d =
        build_transfer_dataset(scores, profiles, valuations, meta, window, &report, &details);

    REQUIRE(d.n_rows() == 1);
    CHECK(d.row_id(0) == "10");
    CHECK(d.target(0) == doctest::Approx(7.0).epsilon(1e-12));  // 12M - 5M

    REQUIRE(d.schema().size() == 6);
    CHECK(d.feature(0).name == "player_score");
    CHECK(d.value(0, 0) == doctest::Approx(0.42));
    CHECK(d.level_of(0, 1) == "Striker");
    CHECK(d.value(0, 2) == 3.0);    // evaluation time = games played
    CHECK(d.value(0, 3) == 4.0);    // whole months May 1 -> Sep 1
    CHECK(d.value(0, 4) == 27.0);   // age at the window end
    CHECK(d.value(0, 5) == 729.0);  // age squared

    CHECK(report.rows == 1);
    CHECK(report.excluded.empty());
    REQUIRE(details.size() == 1);
    CHECK(details[0].player_id == 10);
    CHECK(details[0].realized_change_millions == doctest::Approx(7.0));
    CHECK(details[0].before_date == Date{2021, 5, 1});
    CHECK(details[0].after_date == Date{2021, 9, 1});
}

TEST_CASE("bracket records are the nearest ones outside the window") {
    const std::vector<PlayerScore> scores = {make_score(11, 0.1, 2)};
    const std::vector<PlayerProfile> profiles = {
        make_profile(11, "Window Case", PositionGroup::Midfielder, 501)};
    const std::map<long long, std::vector<ValuationRecord>> valuations = {
        {501,
         {{501, {2020, 10, 1}, 3000000},   // superseded by a later pre-window record
          {501, {2021, 5, 20}, 5000000},   // latest at/before the start
          {501, {2021, 7, 1}, 99000000},   // strictly inside: ignored
          {501, {2021, 9, 10}, 8000000},   // earliest at/after the end
          {501, {2021, 12, 1}, 20000000}}}};
    const std::map<long long, PlayerMeta> meta = {
        {501, make_meta(501, "Window Case", {1995, 3, 2})}};
    const TransferWindow window{{2021, 5, 20}, {2021, 9, 10}};  // boundaries count as brackets

    std::vector<TransferRowDetail> details;
    const Dataset d =
        build_transfer_dataset(scores, profiles, valuations, meta, window, nullptr, &details);
    REQUIRE(d.n_rows() == 1);
    CHECK(d.target(0) == doctest::Approx(3.0));  // 8M - 5M
    CHECK(details[0].before_date == Date{2021, 5, 20});
    CHECK(details[0].after_date == Date{2021, 9, 10});
    CHECK(d.value(0, 3) == doctest::Approx(3.0));  // May 20 -> Sep 10 is 3 whole months
}

TEST_CASE("every unusable player is excluded with a named reason") {
    const TransferWindow window{{2021, 6, 1}, {2021, 7, 1}};
    const std::vector<PlayerScore> scores = {
        make_score(1, 0.1, 1), make_score(2, 0.1, 1), make_score(3, 0.1, 1),
        make_score(4, 0.1, 1), make_score(5, 0.1, 1), make_score(6, 0.1, 1),
        make_score(7, 0.2, 2),
    };
    const std::vector<PlayerProfile> profiles = {
        make_profile(2, "Unlinked Player", PositionGroup::Defender, -1),
        make_profile(3, "Ghost Meta", PositionGroup::Defender, 600),
        make_profile(4, "No Records", PositionGroup::Defender, 601),
        make_profile(5, "Joined Late", PositionGroup::Defender, 602),
        make_profile(6, "Left Early", PositionGroup::Defender, 603),
        make_profile(7, "Keeps Row", PositionGroup::Defender, 604),
    };
    const std::map<long long, std::vector<ValuationRecord>> valuations = {
        {601, {}},
        {602, {{602, {2021, 8, 1}, 1000000}}},  // nothing before the start
        {603, {{603, {2021, 1, 1}, 1000000}}},  // nothing after the end
        {604, {{604, {2021, 1, 1}, 1000000}, {604, {2021, 8, 1}, 500000}}},
    };
    const std::map<long long, PlayerMeta> meta = {
        {601, make_meta(601, "No Records", {1990, 1, 1})},
        {602, make_meta(602, "Joined Late", {1990, 1, 1})},
        {603, make_meta(603, "Left Early", {1990, 1, 1})},
        {604, make_meta(604, "Keeps Row", {1990, 1, 1})},
    };

    TransferBuildReport report;
    const Dataset d =
        build_transfer_dataset(scores, profiles, valuations, meta, window, &report, nullptr);

    CHECK(d.n_rows() == 1);
    CHECK(d.row_id(0) == "7");
    CHECK(report.rows == 1);
    REQUIRE(report.excluded.size() == 6);
    CHECK(report.excluded[0] == "player 1: no profile");
    CHECK(report.excluded[1] == "Unlinked Player: not linked to the valuation data");
    CHECK(report.excluded[2] == "Ghost Meta: linked id missing from player metadata");
    CHECK(report.excluded[3] == "No Records: no valuation records");
    CHECK(report.excluded[4] == "Joined Late: no valuation at or before the window start");
    CHECK(report.excluded[5] == "Left Early: no valuation at or after the window end");
}

TEST_CASE("an inverted window is an error, not an empty result") {
    CHECK_THROWS_WITH_AS(
        build_transfer_dataset({}, {}, {}, {}, {{2021, 8, 1}, {2021, 6, 1}}, nullptr, nullptr),
        "transfer window is inverted: 2021-08-01 .. 2021-06-01", std::runtime_error);
}

TEST_CASE("the build report carries the target spread") {
    const std::vector<PlayerScore> scores = {make_score(1, 0.5, 2), make_score(2, -0.1, 2)};
    const std::vector<PlayerProfile> profiles = {
        make_profile(1, "Riser", PositionGroup::Striker, 700),
        make_profile(2, "Faller", PositionGroup::Defender, 701),
    };
    const std::map<long long, std::vector<ValuationRecord>> valuations = {
        {700, {{700, {2021, 5, 1}, 3000000}, {700, {2021, 9, 1}, 10000000}}},   // +7
        {701, {{701, {2021, 5, 1}, 6000000}, {701, {2021, 9, 1}, 4000000}}},    // -2
    };
    const std::map<long long, PlayerMeta> meta = {
        {700, make_meta(700, "Riser", {1994, 4, 4})},
        {701, make_meta(701, "Faller", {1991, 2, 2})},
    };
    TransferBuildReport report;
    build_transfer_dataset(scores, profiles, valuations, meta, {{2021, 6, 1}, {2021, 7, 1}},
                           &report, nullptr);

    CHECK(report.rows == 2);
    CHECK(report.target_min == doctest::Approx(-2.0));
    CHECK(report.target_max == doctest::Approx(7.0));
    CHECK(report.target_abs_sum == doctest::Approx(9.0));

    const nlohmann::json j = report.to_json();
    CHECK(j.at("rows").get<int>() == 2);
    CHECK(j.at("target_min_millions").get<double>() == doctest::Approx(-2.0));
    CHECK(j.at("target_max_millions").get<double>() == doctest::Approx(7.0));
    CHECK(j.at("target_range_millions").get<double>() == doctest::Approx(9.0));
    CHECK(j.at("target_abs_sum_millions").get<double>() == doctest::Approx(9.0));
    CHECK(j.at("excluded").is_array());
}

TEST_CASE("a depth-zero fee model answers the training mean") {
    // Twelve players, value changes -2, -1, ..., 9 millions: mean 3.5.
    std::vector<PlayerScore> scores;
    std::vector<PlayerProfile> profiles;
    std::map<long long, std::vector<ValuationRecord>> valuations;
    std::map<long long, PlayerMeta> meta;
    for (int i = 0; i < 12; ++i) {
        const long long vid = 800 + i;
        scores.push_back(make_score(i + 1, 0.1 * i, 2 + i % 3));
        profiles.push_back(make_profile(i + 1, "Player " + std::to_string(i),
                                        PositionGroup::Midfielder, vid));
        const long long before = 10000000;
        const long long after = before + (i - 2) * 1000000LL;
        valuations[vid] = {{vid, {2021, 5, 1}, before}, {vid, {2021, 9, 1}, after}};
        meta[vid] = make_meta(vid, "Player " + std::to_string(i), {1992 + i % 5, 6, 15});
    }
    const Dataset d = build_transfer_dataset(scores, profiles, valuations, meta,
                                             {{2021, 6, 1}, {2021, 7, 1}}, nullptr, nullptr);
    REQUIRE(d.n_rows() == 12);

    const ModelArtifact stump =
        fit_with_params(Algorithm::DecisionTree, Task::Regress, d, {{"max_depth", 0}}, 1.0, 7);
    const double expected_mean = 3.5;
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        CHECK(predict_fee_change(stump, d.row(r)) == doctest::Approx(expected_mean).epsilon(1e-12));
    }

    // The artifact survives serialization with identical answers.
    const ModelArtifact back = ModelArtifact::from_json(stump.to_json());
    CHECK(predict_fee_change(back, d.row(0)) == predict_fee_change(stump, d.row(0)));

    // A deeper tree separates the extremes.
    const ModelArtifact tree =
        fit_with_params(Algorithm::DecisionTree, Task::Regress, d, {{"max_depth", 4}}, 1.0, 7);
    CHECK(predict_fee_change(tree, d.row(11)) > predict_fee_change(tree, d.row(0)));
}
