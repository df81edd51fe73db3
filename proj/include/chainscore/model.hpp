#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/dataset.hpp"
#include "chainscore/metrics.hpp"
#include "chainscore/tree.hpp"

namespace chainscore {

enum class Algorithm { LogisticRegression, RandomForest, GradientBoostedTrees, DecisionTree };
enum class Task { Classify, Regress };
enum class SelectionMetric { WeightedF1, WeightedRecall };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

// Hyperparameter grid: key -> candidate values, expanded as a cartesian
// product in key-sorted order. Recognized keys per algorithm:
//   logistic_regression:    l2
//   random_forest:          max_depth, n_trees
//   gradient_boosted_trees: max_depth, n_trees, learning_rate
//   decision_tree:          max_depth
using ParamGrid = std::map<std::string, std::vector<double>>;
using Params = std::map<std::string, double>;

std::vector<Params> expand_grid(const ParamGrid& grid);

struct PredictStats {
    std::size_t unseen_levels = 0;  // categorical values routed to the unknown slot
};

// A trained model plus everything needed to reproduce and apply it: schema,
// training vocabulary, encoders, hyperparameters, seed, and metrics.
// Round-trips through JSON bit-exactly.
struct ModelArtifact {
    Algorithm algorithm = Algorithm::LogisticRegression;
    Task task = Task::Classify;
    std::vector<FeatureSpec> schema;
    std::vector<std::vector<std::string>> vocab;  // per feature; empty for numeric
    std::string fingerprint;                      // schema fingerprint
    Params hyperparameters;
    double class0_weight = 1.0;
    std::uint64_t train_seed = 0;

    // Logistic parameters (one-hot space).
    std::vector<double> coefficients;
    double intercept = 0.0;

    // Tree ensembles.
    std::vector<Tree> trees;
    double base_score = 0.0;     // boosting init; sigmoid(base) is the prior
    double learning_rate = 0.0;  // boosting shrinkage

    // Target-statistic tables for boosted trees: per feature, per vocab
    // level, the encoded value; `prior` covers unknown levels.
    std::vector<std::vector<double>> ts_tables;
    double ts_prior = 0.0;

    // Impurity decrease aggregated per schema feature, normalized to sum 1.
    std::vector<double> feature_importance;

    nlohmann::json training_metrics;

    nlohmann::json to_json() const;
    static ModelArtifact from_json(const nlohmann::json& j);

    // Ranked (feature, weight), descending.
    std::vector<std::pair<std::string, double>> ranked_importances() const;
};

// Trains one configuration, no grid machinery. Deterministic in
// (data, params, weight, seed); per-tree randomness derives from
// (seed, tree index) so serial and parallel runs agree.
ModelArtifact fit_with_params(Algorithm algorithm, Task task, const Dataset& train,
                              const Params& params, double class0_weight, std::uint64_t seed,
                              int jobs = 1);

// Exhaustive grid evaluation on an internal stratified 80/20 fold of
// `train`, selection by the given metric at threshold 0.5, ties resolved to
// the earlier cell; the winning cell is refit on all of `train`.
ModelArtifact train_classifier(Algorithm algorithm, const Dataset& train, double class0_weight,
                               const ParamGrid& grid, std::uint64_t seed,
                               SelectionMetric selection = SelectionMetric::WeightedF1,
                               int jobs = 1);

// Same protocol with RMSE selection; class weights do not apply.
ModelArtifact train_regressor(Algorithm algorithm, const Dataset& train, const ParamGrid& grid,
                              std::uint64_t seed, int jobs = 1);

// rows must match the artifact's schema arity and kinds; categorical levels
// unseen in training are routed to the reserved unknown slot and counted in
// `stats`.
std::vector<double> predict_proba_rows(const ModelArtifact& m,
                                       const std::vector<std::vector<FeatureValue>>& rows,
                                       PredictStats* stats = nullptr);
std::vector<double> predict_value_rows(const ModelArtifact& m,
                                       const std::vector<std::vector<FeatureValue>>& rows,
                                       PredictStats* stats = nullptr);

// Dataset variants check the schema fingerprint and reject mismatches.
std::vector<double> predict_proba(const ModelArtifact& m, const Dataset& rows,
                                  PredictStats* stats = nullptr);
std::vector<double> predict_value(const ModelArtifact& m, const Dataset& rows,
                                  PredictStats* stats = nullptr);

ClassificationReport evaluate_classifier(const ModelArtifact& m, const Dataset& test);
RegressionReport evaluate_regressor(const ModelArtifact& m, const Dataset& test);

}  // namespace chainscore
