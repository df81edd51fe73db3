#pragma once

#include <cstdint>
#include <string>

namespace chainscore {

struct SimOptions {
    std::uint64_t seed = 99;
    int competition_id = 55;
    int season_id = 43;
};

struct SimSummary {
    int matches = 0;
    int players = 0;
    int events = 0;
    int shots = 0;
    int goals = 0;
};

// Writes a self-contained 24-team tournament under `root` in the event-data
// layout the ingest stage reads: matches/<comp>/<season>.json,
// events/<match_id>.json, lineups/<match_id>.json, plus the market-value
// tables players.csv and player_valuations.csv. Scoring chances follow the
// shot geometry and a hidden per-player skill, and each player's market-value
// change tracks that same skill with an age discount, so the trained models
// have an honest signal to find. Deterministic in the seed.
SimSummary generate_corpus(const std::string& root, const SimOptions& options = {});

}  // namespace chainscore
