#include "chainscore/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainscore {

std::vector<FeatureSpec> transfer_schema() {
    return {{"player_score", FeatureKind::Continuous},
            {"position_group", FeatureKind::Categorical},
            {"evaluation_time", FeatureKind::Discrete},
            {"time_lag", FeatureKind::Discrete},
            {"age", FeatureKind::Discrete},
            {"age_squared", FeatureKind::Discrete}};
}

nlohmann::json TransferBuildReport::to_json() const {
    return {{"rows", rows},
            {"excluded", excluded},
            {"target_min_millions", target_min},
            {"target_max_millions", target_max},
            {"target_range_millions", target_max - target_min},
            {"target_abs_sum_millions", target_abs_sum}};
}

Dataset build_transfer_dataset(const std::vector<PlayerScore>& scores,
                               const std::vector<PlayerProfile>& profiles,
                               const std::map<long long, std::vector<ValuationRecord>>& valuations,
                               const std::map<long long, PlayerMeta>& meta,
                               const TransferWindow& window, TransferBuildReport* report,
                               std::vector<TransferRowDetail>* details) {
    if (window.end < window.start) {
        throw std::runtime_error("transfer window is inverted: " + window.start.to_string() +
                                 " .. " + window.end.to_string());
    }
    std::map<int, const PlayerProfile*> profile_by_id;
    for (const PlayerProfile& p : profiles) profile_by_id[p.player_id] = &p;

    DatasetBuilder builder(transfer_schema());
    TransferBuildReport local;
    auto exclude = [&](const std::string& name, const char* why) {
        local.excluded.push_back(name + ": " + why);
    };

    for (const PlayerScore& score : scores) {
        const auto profile_it = profile_by_id.find(score.player_id);
        if (profile_it == profile_by_id.end()) {
            exclude("player " + std::to_string(score.player_id), "no profile");
            continue;
        }
        const PlayerProfile& profile = *profile_it->second;
        if (profile.linked_valuation_id < 0) {
            exclude(profile.name, "not linked to the valuation data");
            continue;
        }
        const auto meta_it = meta.find(profile.linked_valuation_id);
        if (meta_it == meta.end()) {
            exclude(profile.name, "linked id missing from player metadata");
            continue;
        }
        const auto series_it = valuations.find(profile.linked_valuation_id);
        if (series_it == valuations.end() || series_it->second.empty()) {
            exclude(profile.name, "no valuation records");
            continue;
        }
        const std::vector<ValuationRecord>& series = series_it->second;  // date-ascending

        const ValuationRecord* before = nullptr;
        for (const ValuationRecord& r : series) {
            if (r.date <= window.start) before = &r;  // latest record at or before the start
        }
        const ValuationRecord* after = nullptr;
        for (const ValuationRecord& r : series) {
            if (window.end <= r.date) {  // earliest record at or after the end
                after = &r;
                break;
            }
        }
        if (!before) {
            exclude(profile.name, "no valuation at or before the window start");
            continue;
        }
        if (!after) {
            exclude(profile.name, "no valuation at or after the window end");
            continue;
        }

        const double change_millions =
            (static_cast<double>(after->market_value_eur) - before->market_value_eur) / 1e6;
        const int time_lag = whole_months_between(before->date, after->date);
        const int age = whole_years_between(meta_it->second.birth_date, window.end);

        builder.add_row(std::to_string(score.player_id),
                        {FeatureValue::num(score.normalized),
                         FeatureValue::cat(position_group_name(profile.group)),
                         FeatureValue::num(score.games_played), FeatureValue::num(time_lag),
                         FeatureValue::num(age),
                         FeatureValue::num(static_cast<double>(age) * age)},
                        change_millions);
        if (details) {
            details->push_back(
                {score.player_id, profile.name, change_millions, before->date, after->date});
        }
        if (local.rows == 0 || change_millions < local.target_min) {
            local.target_min = change_millions;
        }
        if (local.rows == 0 || change_millions > local.target_max) {
            local.target_max = change_millions;
        }
        local.target_abs_sum += std::abs(change_millions);
        ++local.rows;
    }
    if (report) *report = std::move(local);
    return builder.build();
}

double predict_fee_change(const ModelArtifact& model, const std::vector<FeatureValue>& row) {
    return predict_value_rows(model, {row}).front();
}

}  // namespace chainscore
