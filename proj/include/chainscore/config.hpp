#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chainscore/model.hpp"

namespace chainscore {

// Everything a pipeline run needs; one JSON file plus flag overrides.
// Defaults hold the standard hyperparameter grids, so runs are fully
// specified without any file at all.
struct PipelineConfig {
    std::string data_root;
    std::string valuations_csv;
    std::string players_csv;
    std::string link_overrides;  // optional JSON {"<event-data name>": valuation_id}
    std::string out_dir = "out";

    std::vector<std::pair<int, int>> competitions = {{55, 43}};
    std::uint64_t seed = 17;
    double test_fraction = 0.3;

    // 0 means "use the positive-class prevalence of the training split".
    double xg_class0_weight = 0.0;
    double scorer_class0_weight = 0.0;

    std::map<std::string, ParamGrid> xg_grids;        // algorithm name -> grid
    std::map<std::string, ParamGrid> scorer_grids;
    std::map<std::string, ParamGrid> transfer_grids;

    std::string xg_final = "gradient_boosted_trees";
    std::string scorer_final = "gradient_boosted_trees";
    std::string transfer_final = "random_forest";
    std::string selection_metric = "f1_weighted";  // or "recall_weighted"

    std::string window_start;  // ISO dates; empty -> span of the selected matches
    std::string window_end;

    int min_games = 3;
    int jobs = 1;

    bool literal_distance = false;  // sqrt(x^2 + (40-y)^2) sensitivity variant
    bool ablate_chain_length = false;
    bool suppress_shooter_delta = false;
    bool exclude_penalties = false;

    std::vector<std::string> report_players;
    std::vector<std::string> team_allowlist;

    static PipelineConfig defaults();

    // Parses a config JSON object over the defaults. Unknown keys and type
    // errors are all collected and reported in one exception.
    static PipelineConfig from_json(const nlohmann::json& j);
    static PipelineConfig load(const std::string& path);

    nlohmann::json to_json() const;
    std::string hash() const;  // content hash of the serialized config
};

}  // namespace chainscore
