#pragma once

#include <vector>

#include "chainscore/chains.hpp"
#include "chainscore/dataset.hpp"
#include "chainscore/model.hpp"

namespace chainscore {

struct ScorerOptions {
    // Drops actions_to_chain_end, the retrospective chain-length feature,
    // for the ablated sensitivity run.
    bool ablate_chain_length = false;
};

// Schema for non-final chain actions: action_type, under_pressure,
// previous_action_type, play_pattern (categoricals); x, y,
// actions_to_chain_end (unless ablated), action_number, timestamp
// (discrete, rounded); duration, cumulative_duration_before (continuous).
std::vector<FeatureSpec> scorer_schema(const ScorerOptions& options = {});

struct ScorerBuildReport {
    int rows = 0;
    int positives = 0;
    double prevalence = 0.0;
};

// One row per non-final action; the label is the chain's goal label. Row
// ids are "match:chain:k".
Dataset build_scorer_dataset(const std::vector<PossessionChain>& chains,
                             const ScorerOptions& options = {},
                             ScorerBuildReport* report = nullptr);

// Feature vector for action k (1-based, k < K) of `chain`.
std::vector<FeatureValue> scorer_features(const PossessionChain& chain, int k,
                                          const ScorerOptions& options = {});

// P(score | s_k) for a non-final action of the chain.
double score_state(const ModelArtifact& model, const PossessionChain& chain, int k,
                   const ScorerOptions& options = {});

}  // namespace chainscore
