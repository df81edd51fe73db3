#include "chainscore/scorer.hpp"

#include <cmath>
#include <stdexcept>

namespace chainscore {

std::vector<FeatureSpec> scorer_schema(const ScorerOptions& options) {
    std::vector<FeatureSpec> schema = {
        {"action_type", FeatureKind::Categorical},
        {"under_pressure", FeatureKind::Categorical},
        {"previous_action_type", FeatureKind::Categorical},
        {"play_pattern", FeatureKind::Categorical},
        {"x", FeatureKind::Discrete},
        {"y", FeatureKind::Discrete},
    };
    if (!options.ablate_chain_length) {
        schema.push_back({"actions_to_chain_end", FeatureKind::Discrete});
    }
    schema.push_back({"action_number", FeatureKind::Discrete});
    schema.push_back({"timestamp", FeatureKind::Discrete});
    schema.push_back({"duration", FeatureKind::Continuous});
    schema.push_back({"cumulative_duration_before", FeatureKind::Continuous});
    return schema;
}

std::vector<FeatureValue> scorer_features(const PossessionChain& chain, int k,
                                          const ScorerOptions& options) {
    const int K = static_cast<int>(chain.actions.size());
    if (k < 1 || k >= K) {
        throw std::runtime_error("scorer_features: k must be a non-final action index, got " +
                                 std::to_string(k) + " of K=" + std::to_string(K));
    }
    const ChainAction& action = chain.actions[static_cast<std::size_t>(k - 1)];
    double cumulative_before = 0.0;
    for (int i = 0; i < k - 1; ++i) cumulative_before += chain.actions[i].duration;

    std::vector<FeatureValue> row = {
        FeatureValue::cat(event_type_name(action.type)),
        FeatureValue::cat(action.under_pressure ? "true" : "false"),
        FeatureValue::cat(k == 1 ? "none" : event_type_name(chain.actions[k - 2].type)),
        FeatureValue::cat(action.play_pattern),
        FeatureValue::num(std::round(action.start_state.x)),
        FeatureValue::num(std::round(action.start_state.y)),
    };
    if (!options.ablate_chain_length) {
        row.push_back(FeatureValue::num(K - k));
    }
    row.push_back(FeatureValue::num(k));
    row.push_back(FeatureValue::num(std::round(action.timestamp)));
    row.push_back(FeatureValue::num(action.duration));
    row.push_back(FeatureValue::num(cumulative_before));
    return row;
}

Dataset build_scorer_dataset(const std::vector<PossessionChain>& chains,
                             const ScorerOptions& options, ScorerBuildReport* report) {
    DatasetBuilder builder(scorer_schema(options));
    int positives = 0;
    for (const PossessionChain& chain : chains) {
        const int K = static_cast<int>(chain.actions.size());
        for (int k = 1; k < K; ++k) {
            builder.add_row(chain.key() + ":" + std::to_string(k),
                            scorer_features(chain, k, options), chain.label());
            positives += chain.label();
        }
    }
    const std::size_t rows = builder.pending_rows();
    Dataset d = builder.build();
    if (report) {
        report->rows = static_cast<int>(rows);
        report->positives = positives;
        report->prevalence = rows == 0 ? 0.0 : static_cast<double>(positives) / rows;
    }
    return d;
}

double score_state(const ModelArtifact& model, const PossessionChain& chain, int k,
                   const ScorerOptions& options) {
    return predict_proba_rows(model, {scorer_features(chain, k, options)}).front();
}

}  // namespace chainscore
