#include <doctest.h>

#include "chainscore/chains.hpp"
#include "chainscore/util/rng.hpp"
#include "support/oracles.hpp"

using namespace chainscore;
using chainscore::testing::make_test_event;

namespace {

Event other_event(int index, int team, const std::string& kind, std::optional<BallState> loc,
                  int possession) {
    Event e = make_test_event(index, team, 90 + index, EventType::Other, loc, possession);
    e.other_kind = kind;
    return e;
}

}  // namespace

TEST_CASE("a pass-pass-carry-shot possession becomes one four-action chain") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 11, EventType::Pass, BallState{45, 38}, 1),
        make_test_event(2, 1, 12, EventType::Carry, BallState{70, 42}, 1),
        make_test_event(3, 1, 12, EventType::Shot, BallState{100, 41}, 1, 1, "", true),
    };
    ChainExtractionReport report;
    const auto chains = extract_chains(events, &report);

    REQUIRE(chains.size() == 1);
    const PossessionChain& c = chains[0];
    CHECK(c.actions.size() == 4);
    CHECK(c.team_id == 1);
    CHECK(c.ends_in_goal);
    CHECK(c.label() == 1);
    CHECK(c.chain_id == 0);
    CHECK(c.key() == "1:0");
    for (int k = 0; k < 4; ++k) {
        CHECK(c.actions[static_cast<std::size_t>(k)].k == k + 1);
        CHECK(c.actions[static_cast<std::size_t>(k)].event_index == k);
    }
    // End states chain into the next start; the shot ends at its own spot.
    CHECK(c.actions[0].end_state == BallState{45, 38});
    CHECK(c.actions[1].end_state == BallState{70, 42});
    CHECK(c.actions[2].end_state == BallState{100, 41});
    CHECK(c.actions[3].start_state == BallState{100, 41});
    CHECK(c.actions[3].end_state == BallState{100, 41});
    CHECK(c.shot_action().type == EventType::Shot);
    CHECK(report.shots_seen == 1);
    CHECK(report.chains_built == 1);
    CHECK(report.dropped_shots == 0);
}

TEST_CASE("an opposing interception restarts the chain") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 2, 20, EventType::Interception, BallState{60, 30}, 1, 1, "Won"),
        make_test_event(2, 1, 11, EventType::Pass, BallState{55, 35}, 1),
        make_test_event(3, 1, 11, EventType::Shot, BallState{95, 40}, 1),
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].actions.size() == 2);
    CHECK(chains[0].actions[0].event_index == 2);
    CHECK_FALSE(chains[0].ends_in_goal);
}

TEST_CASE("no shot means no chains") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 11, EventType::Carry, BallState{40, 40}, 1),
        make_test_event(2, 2, 20, EventType::Interception, BallState{70, 40}, 2),
    };
    ChainExtractionReport report;
    CHECK(extract_chains(events, &report).empty());
    CHECK(report.shots_seen == 0);
    CHECK(report.chains_built == 0);
}

TEST_CASE("possession and period boundaries cut the run") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 11, EventType::Pass, BallState{50, 40}, 2),  // new possession
        make_test_event(2, 1, 11, EventType::Shot, BallState{90, 40}, 2),
        make_test_event(3, 1, 12, EventType::Carry, BallState{30, 20}, 3, 1),
        make_test_event(4, 1, 12, EventType::Shot, BallState{85, 30}, 3, 2),  // period flips
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].actions.size() == 2);  // the possession-1 pass is out
    CHECK(chains[0].actions[0].event_index == 1);
    CHECK(chains[1].actions.size() == 1);  // the period-1 carry is out
    CHECK(chains[1].actions[0].event_index == 4);
}

TEST_CASE("an opposing on-ball action cuts even without a location") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 2, 20, EventType::Carry, std::nullopt, 1),
        make_test_event(2, 1, 11, EventType::Pass, BallState{60, 40}, 1),
        make_test_event(3, 1, 11, EventType::Shot, BallState{100, 40}, 1),
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 1);
    REQUIRE(chains[0].actions.size() == 2);
    CHECK(chains[0].actions[0].event_index == 2);
}

TEST_CASE("duel outcomes decide whether the run is cut") {
    CHECK(duel_won("Won"));
    CHECK(duel_won("won"));
    CHECK(duel_won("Success In Play"));
    CHECK(duel_won("Success Out"));
    CHECK_FALSE(duel_won("Lost In Play"));
    CHECK_FALSE(duel_won("Lost Out"));
    CHECK_FALSE(duel_won("Aerial Lost"));
    CHECK_FALSE(duel_won(""));

    const auto build = [](const std::string& outcome) {
        const std::vector<Event> events = {
            make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
            make_test_event(1, 2, 20, EventType::Duel, BallState{60, 30}, 1, 1, outcome),
            make_test_event(2, 1, 11, EventType::Shot, BallState{100, 40}, 1),
        };
        return extract_chains(events);
    };
    CHECK(build("Won")[0].actions.size() == 1);          // cut: shot only
    CHECK(build("Lost In Play")[0].actions.size() == 2);  // absorbed
}

TEST_CASE("a same-team duel never cuts") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 12, EventType::Duel, BallState{60, 30}, 1, 1, "Won"),
        make_test_event(2, 1, 11, EventType::Shot, BallState{100, 40}, 1),
    };
    CHECK(extract_chains(events)[0].actions.size() == 2);
}

TEST_CASE("receipts, pressure and own-goal records are absorbed") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 11, EventType::BallReceipt, BallState{45, 38}, 1),
        other_event(2, 2, "Pressure", BallState{46, 39}, 1),
        other_event(3, 2, "Own Goal Against", BallState{2, 40}, 1),
        other_event(4, 1, "Own Goal For", std::nullopt, 1),
        make_test_event(5, 1, 11, EventType::Pass, BallState{60, 40}, 1),
        make_test_event(6, 1, 12, EventType::Shot, BallState{100, 40}, 1),
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 1);
    REQUIRE(chains[0].actions.size() == 3);
    CHECK(chains[0].actions[0].event_index == 0);
    CHECK(chains[0].actions[1].event_index == 5);
    CHECK(chains[0].actions[2].event_index == 6);
}

TEST_CASE("an earlier shot closes its chain; the rebound starts fresh") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{40, 40}, 1),
        make_test_event(1, 1, 11, EventType::Shot, BallState{95, 40}, 1),
        make_test_event(2, 1, 12, EventType::Carry, BallState{110, 44}, 1),
        make_test_event(3, 1, 12, EventType::Shot, BallState{114, 42}, 1, 1, "", true),
    };
    ChainExtractionReport report;
    const auto chains = extract_chains(events, &report);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].actions.size() == 2);
    CHECK_FALSE(chains[0].ends_in_goal);
    CHECK(chains[1].actions.size() == 2);
    CHECK(chains[1].actions[0].event_index == 2);
    CHECK(chains[1].ends_in_goal);
    CHECK(report.chains_built == 2);
}

TEST_CASE("a location-less shot drops its chain and is counted") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{40, 40}, 1),
        make_test_event(1, 1, 11, EventType::Shot, std::nullopt, 1),
        make_test_event(2, 1, 12, EventType::Pass, BallState{60, 40}, 1),
        make_test_event(3, 1, 12, EventType::Shot, BallState{100, 40}, 1),
    };
    ChainExtractionReport report;
    const auto chains = extract_chains(events, &report);
    CHECK(report.shots_seen == 2);
    CHECK(report.dropped_shots == 1);
    CHECK(report.chains_built == 1);
    CHECK(report.chains_built == report.shots_seen - report.dropped_shots);
    REQUIRE(chains.size() == 1);
    // The dropped shot still closed the running chain.
    CHECK(chains[0].actions.size() == 2);
    CHECK(chains[0].actions[0].event_index == 2);
}

TEST_CASE("location-less buildup actions are absorbed and counted") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{40, 40}, 1),
        make_test_event(1, 1, 11, EventType::Carry, std::nullopt, 1),
        make_test_event(2, 1, 12, EventType::Shot, BallState{100, 40}, 1),
    };
    ChainExtractionReport report;
    const auto chains = extract_chains(events, &report);
    CHECK(report.skipped_actions == 1);
    REQUIRE(chains.size() == 1);
    REQUIRE(chains[0].actions.size() == 2);
    CHECK(chains[0].actions[0].event_index == 0);
    CHECK(chains[0].actions[0].end_state == BallState{100, 40});
}

TEST_CASE("a single-action chain is just the shot") {
    const std::vector<Event> events = {
        make_test_event(0, 2, 20, EventType::Pass, BallState{30, 40}, 1),
        make_test_event(1, 1, 10, EventType::Shot, BallState{90, 44}, 2),
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].actions.size() == 1);
    CHECK(chains[0].team_id == 1);
}

TEST_CASE("chains round-trip through json") {
    const std::vector<Event> events = {
        make_test_event(0, 1, 10, EventType::Pass, BallState{20, 40}, 1),
        make_test_event(1, 1, 12, EventType::Shot, BallState{100, 41}, 1, 1, "", true),
    };
    const auto chains = extract_chains(events);
    REQUIRE(chains.size() == 1);
    const PossessionChain back = PossessionChain::from_json(chains[0].to_json());
    CHECK(back.to_json() == chains[0].to_json());
    CHECK(back.actions.size() == chains[0].actions.size());
    CHECK(back.ends_in_goal == chains[0].ends_in_goal);
    CHECK(back.shot == chains[0].shot);
}

TEST_CASE("report counts add up across merges") {
    ChainExtractionReport a{5, 4, 1, 2};
    const ChainExtractionReport b{3, 3, 0, 1};
    a.merge(b);
    CHECK(a.shots_seen == 8);
    CHECK(a.chains_built == 7);
    CHECK(a.dropped_shots == 1);
    CHECK(a.skipped_actions == 3);
}

TEST_CASE("the forward extractor matches the backward oracle on adversarial streams") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        Rng stream_rng = rng.fork("stream_" + std::to_string(trial));
        const std::vector<Event> events = testing::random_event_stream(stream_rng);

        ChainExtractionReport report;
        const auto got = extract_chains(events, &report);
        testing::OracleChainReport oracle_report;
        const auto want = testing::oracle_chains(events, &oracle_report);

        std::string why;
        const bool equal = testing::chains_equal(got, want, &why);
        CAPTURE(trial);
        CAPTURE(why);
        CHECK(equal);
        CHECK(report.shots_seen == oracle_report.shots_seen);
        CHECK(report.dropped_shots == oracle_report.dropped_shots);
        CHECK(report.chains_built == report.shots_seen - report.dropped_shots);
    }
}
