#pragma once

#include <vector>

#include "chainscore/chains.hpp"
#include "chainscore/dataset.hpp"
#include "chainscore/model.hpp"

namespace chainscore {

struct XgOptions {
    bool literal_distance = false;  // sqrt(x^2 + (40-y)^2) sensitivity variant
    bool exclude_penalties = false;
};

// Fixed xG schema: technique, body_part, shot_type, under_pressure
// (categoricals) + angle, distance (continuous).
std::vector<FeatureSpec> xg_schema();

struct XgBuildReport {
    int rows = 0;
    int goals = 0;
    int skipped_penalties = 0;
    double prevalence = 0.0;
};

// One row per chain's final shot action; label = ends_in_goal. Angle and
// distance derive from the shot's start state. Row ids are "match:chain".
Dataset build_xg_dataset(const std::vector<PossessionChain>& chains, const PitchSpec& pitch,
                         const XgOptions& options = {}, XgBuildReport* report = nullptr);

// Feature vector for a single shot action, matching xg_schema() order.
std::vector<FeatureValue> xg_features(const ChainAction& shot_action, const ShotDetail& shot,
                                      const PitchSpec& pitch, const XgOptions& options = {});

// c_xG for the chain-final shot: P(goal) from the trained model.
double xg_score(const ModelArtifact& model, const ChainAction& shot_action,
                const ShotDetail& shot, const PitchSpec& pitch, const XgOptions& options = {});

}  // namespace chainscore
