#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/dataset.hpp"
#include "chainscore/ingest.hpp"
#include "chainscore/model.hpp"
#include "chainscore/valuation.hpp"

namespace chainscore {

// Schema: player_score (continuous), position_group (categorical),
// evaluation_time, time_lag, age, age_squared (discrete). Target: market
// value change in millions of euros.
std::vector<FeatureSpec> transfer_schema();

struct TransferWindow {
    Date start;
    Date end;
};

struct TransferRowDetail {
    int player_id = -1;  // event-data id
    std::string name;
    double realized_change_millions = 0.0;
    Date before_date;
    Date after_date;
};

struct TransferBuildReport {
    int rows = 0;
    std::vector<std::string> excluded;  // players without bracketing records
    double target_min = 0.0;
    double target_max = 0.0;
    double target_abs_sum = 0.0;

    nlohmann::json to_json() const;
};

// One row per scored, linked player: value change across the window
// ((earliest record dated >= end) - (latest record dated <= start), in
// millions), age at window end, and the lag in whole months between the two
// record dates. Players missing either bracket are excluded and reported.
Dataset build_transfer_dataset(const std::vector<PlayerScore>& scores,
                               const std::vector<PlayerProfile>& profiles,
                               const std::map<long long, std::vector<ValuationRecord>>& valuations,
                               const std::map<long long, PlayerMeta>& meta,
                               const TransferWindow& window,
                               TransferBuildReport* report = nullptr,
                               std::vector<TransferRowDetail>* details = nullptr);

// Predicted market-value change in millions for one feature row.
double predict_fee_change(const ModelArtifact& model, const std::vector<FeatureValue>& row);

}  // namespace chainscore
