#include <string>
#include <vector>

#include <doctest.h>

#include "chainscore/scorer.hpp"

using namespace chainscore;

namespace {

ChainAction make_action(int k, EventType type, double x, double y, double timestamp,
                        double duration, bool pressured = false) {
    ChainAction a;
    a.k = k;
    a.player_id = 100 + k;
    a.type = type;
    a.start_state = BallState{x, y};
    a.end_state = BallState{x, y};
    a.timestamp = timestamp;
    a.duration = duration;
    a.under_pressure = pressured;
    a.play_pattern = "Regular Play";
    return a;
}

PossessionChain four_action_chain(bool goal) {
    PossessionChain c;
    c.match_id = 7;
    c.chain_id = 2;
    c.team_id = 1;
    c.ends_in_goal = goal;
    c.shot = ShotDetail{"Normal", "Right Foot", "Open Play", goal};
    c.actions = {
        make_action(1, EventType::Pass, 50.2, 30.0, 10.0, 1.0),
        make_action(2, EventType::Carry, 65.0, 35.0, 12.0, 2.0, true),
        make_action(3, EventType::Pass, 80.0, 40.0, 15.0, 0.5),
        make_action(4, EventType::Shot, 100.0, 40.0, 16.5, 0.3),
    };
    return c;
}

}  // namespace

TEST_CASE("every non-final action becomes a labeled row") {
    const PossessionChain chain = four_action_chain(true);
    ScorerBuildReport report;
    const Dataset d = build_scorer_dataset({chain}, {}, &report);

    REQUIRE(d.n_rows() == 3);  // K=4 -> 3 non-final actions
    CHECK(d.row_id(0) == "7:2:1");
    CHECK(d.row_id(1) == "7:2:2");
    CHECK(d.row_id(2) == "7:2:3");
    for (std::size_t r = 0; r < 3; ++r) CHECK(d.target(r) == 1.0);
    CHECK(report.rows == 3);
    CHECK(report.positives == 3);
    CHECK(report.prevalence == doctest::Approx(1.0));

    // actions_to_chain_end counts down 3, 2, 1.
    const auto schema = scorer_schema();
    std::size_t to_end = 0;
    for (std::size_t f = 0; f < schema.size(); ++f) {
        if (schema[f].name == "actions_to_chain_end") to_end = f;
    }
    CHECK(d.value(0, to_end) == 3.0);
    CHECK(d.value(1, to_end) == 2.0);
    CHECK(d.value(2, to_end) == 1.0);
}

TEST_CASE("feature vector fields match the action's record") {
    const PossessionChain chain = four_action_chain(false);

    const auto first = scorer_features(chain, 1);
    const auto schema = scorer_schema();
    REQUIRE(first.size() == schema.size());
    CHECK(first[0].level == "Pass");
    CHECK(first[1].level == "false");
    CHECK(first[2].level == "none");  // no previous action at k=1
    CHECK(first[3].level == "Regular Play");
    CHECK(first[4].number == 50.0);  // x rounds to integers
    CHECK(first[5].number == 30.0);
    CHECK(first[6].number == 3.0);   // actions to chain end
    CHECK(first[7].number == 1.0);   // action number
    CHECK(first[8].number == 10.0);  // timestamp
    CHECK(first[9].number == 1.0);   // duration
    CHECK(first[10].number == 0.0);  // nothing played out before k=1

    const auto second = scorer_features(chain, 2);
    CHECK(second[0].level == "Carry");
    CHECK(second[1].level == "true");
    CHECK(second[2].level == "Pass");
    CHECK(second[10].number == doctest::Approx(1.0));  // first action's duration

    const auto third = scorer_features(chain, 3);
    CHECK(third[2].level == "Carry");
    CHECK(third[10].number == doctest::Approx(3.0));  // 1.0 + 2.0 accumulated
}

TEST_CASE("single-action chains contribute no scorer rows") {
    PossessionChain lone;
    lone.match_id = 1;
    lone.chain_id = 0;
    lone.ends_in_goal = true;
    lone.shot = ShotDetail{"Normal", "Right Foot", "Open Play", true};
    lone.actions = {make_action(1, EventType::Shot, 110, 40, 5.0, 0.2)};

    ScorerBuildReport report;
    const Dataset d = build_scorer_dataset({lone}, {}, &report);
    CHECK(d.n_rows() == 0);
    CHECK(report.rows == 0);
    CHECK(report.positives == 0);
}

TEST_CASE("row count sums chain lengths minus the shots") {
    std::vector<PossessionChain> chains = {four_action_chain(true), four_action_chain(false)};
    chains[1].chain_id = 3;
    PossessionChain two;
    two.match_id = 8;
    two.chain_id = 0;
    two.ends_in_goal = false;
    two.shot = ShotDetail{"Normal", "Left Foot", "Open Play", false};
    two.actions = {make_action(1, EventType::Dribble, 70, 20, 3.0, 1.1),
                   make_action(2, EventType::Shot, 90, 25, 4.5, 0.4)};
    chains.push_back(two);

    ScorerBuildReport report;
    const Dataset d = build_scorer_dataset(chains, {}, &report);
    CHECK(d.n_rows() == 3 + 3 + 1);
    CHECK(report.positives == 3);  // only the first chain scored
    CHECK(report.prevalence == doctest::Approx(3.0 / 7.0));
}

TEST_CASE("ablation removes the chain-length column and nothing else") {
    ScorerOptions ablated;
    ablated.ablate_chain_length = true;

    const auto full = scorer_schema();
    const auto cut = scorer_schema(ablated);
    CHECK(full.size() == cut.size() + 1);
    for (const auto& spec : cut) CHECK(spec.name != "actions_to_chain_end");

    const PossessionChain chain = four_action_chain(true);
    const Dataset d = build_scorer_dataset({chain}, ablated, nullptr);
    CHECK(d.n_features() == cut.size());
    CHECK(d.n_rows() == 3);

    const auto row = scorer_features(chain, 1, ablated);
    REQUIRE(row.size() == cut.size());
    CHECK(row[6].number == 1.0);  // action_number moves up one slot
}

TEST_CASE("final and out-of-range actions are rejected") {
    const PossessionChain chain = four_action_chain(true);
    CHECK_THROWS_WITH_AS(scorer_features(chain, 0), doctest::Contains("non-final"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(scorer_features(chain, 4), doctest::Contains("non-final"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(scorer_features(chain, 9), doctest::Contains("non-final"),
                         std::runtime_error);
    CHECK_NOTHROW(scorer_features(chain, 3));
}

TEST_CASE("a trained scorer ranks deep positions above deep-in-own-half ones") {
    // Chains whose goal label depends only on where the buildup happens:
    // everything past x=80 scores, everything before misses. Both classes
    // reuse the same y/timestamp/duration patterns so position is the only
    // separating signal.
    std::vector<PossessionChain> chains;
    int chain_id = 0;
    for (const bool goal : {true, false}) {
        for (int j = 0; j < 75; ++j) {
            const double base_x = goal ? 85.0 + (j % 10) : 15.0 + (j % 40);
            PossessionChain c;
            c.match_id = 1;
            c.chain_id = chain_id++;
            c.team_id = 1;
            c.ends_in_goal = goal;
            c.shot = ShotDetail{"Normal", "Right Foot", "Open Play", goal};
            c.actions = {
                make_action(1, EventType::Pass, base_x, 30.0 + (j % 20), j * 5.0, 1.0),
                make_action(2, EventType::Carry, base_x + 2.0, 32.0, j * 5.0 + 1.5, 1.2),
                make_action(3, EventType::Shot, 105.0, 40.0, j * 5.0 + 3.0, 0.3),
            };
            chains.push_back(c);
        }
    }

    const Dataset d = build_scorer_dataset(chains, {}, nullptr);
    const ModelArtifact model = train_classifier(Algorithm::GradientBoostedTrees, d, 1.0,
                                                 {{"max_depth", {3.0}},
                                                  {"n_trees", {60.0}},
                                                  {"learning_rate", {0.1}}},
                                                 17);

    PossessionChain probe = chains.front();
    probe.actions[0].start_state = BallState{90.0, 40.0};
    const double deep = score_state(model, probe, 1);
    probe.actions[0].start_state = BallState{10.0, 40.0};
    const double shallow = score_state(model, probe, 1);
    CHECK(deep > shallow);
    CHECK(deep > 0.5);
    CHECK(shallow < 0.5);

    const auto direct = predict_proba_rows(model, {scorer_features(probe, 1)});
    CHECK(shallow == direct.front());
}
