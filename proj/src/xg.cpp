#include "chainscore/xg.hpp"

namespace chainscore {

std::vector<FeatureSpec> xg_schema() {
    return {{"technique", FeatureKind::Categorical},
            {"body_part", FeatureKind::Categorical},
            {"shot_type", FeatureKind::Categorical},
            {"under_pressure", FeatureKind::Categorical},
            {"angle", FeatureKind::Continuous},
            {"distance", FeatureKind::Continuous}};
}

std::vector<FeatureValue> xg_features(const ChainAction& shot_action, const ShotDetail& shot,
                                      const PitchSpec& pitch, const XgOptions& options) {
    const BallState& s = shot_action.start_state;
    const double distance =
        options.literal_distance ? goal_distance_literal(s, pitch) : goal_distance(s, pitch);
    return {FeatureValue::cat(shot.technique),
            FeatureValue::cat(shot.body_part),
            FeatureValue::cat(shot.shot_type),
            FeatureValue::cat(shot_action.under_pressure ? "true" : "false"),
            FeatureValue::num(shooting_angle(s, pitch)),
            FeatureValue::num(distance)};
}

Dataset build_xg_dataset(const std::vector<PossessionChain>& chains, const PitchSpec& pitch,
                         const XgOptions& options, XgBuildReport* report) {
    DatasetBuilder builder(xg_schema());
    int goals = 0;
    int skipped_penalties = 0;
    for (const PossessionChain& chain : chains) {
        if (options.exclude_penalties && chain.shot.shot_type == "Penalty") {
            ++skipped_penalties;
            continue;
        }
        builder.add_row(chain.key(), xg_features(chain.shot_action(), chain.shot, pitch, options),
                        chain.label());
        goals += chain.label();
    }
    const std::size_t rows = builder.pending_rows();
    Dataset d = builder.build();
    if (report) {
        report->rows = static_cast<int>(rows);
        report->goals = goals;
        report->skipped_penalties = skipped_penalties;
        report->prevalence = rows == 0 ? 0.0 : static_cast<double>(goals) / rows;
    }
    return d;
}

double xg_score(const ModelArtifact& model, const ChainAction& shot_action,
                const ShotDetail& shot, const PitchSpec& pitch, const XgOptions& options) {
    return predict_proba_rows(model, {xg_features(shot_action, shot, pitch, options)}).front();
}

}  // namespace chainscore
