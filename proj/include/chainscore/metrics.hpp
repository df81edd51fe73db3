#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chainscore {

struct PrPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
};

struct ClassificationReport {
    double f1_weighted = 0.0;
    double precision_weighted = 0.0;
    double recall_weighted = 0.0;
    double auc = 0.0;
    bool auc_defined = false;  // false when the test set has a single class
    std::vector<PrPoint> pr_curve;  // thresholds strictly increasing
    ConfusionMatrix confusion;      // at threshold 0.5
    std::size_t n = 0;
    double prevalence = 0.0;

    nlohmann::json to_json() const;
};

struct RegressionReport {
    double rmse = 0.0;
    double mae = 0.0;
    // Ranked by weight, descending; weights sum to 1 for tree models.
    std::vector<std::pair<std::string, double>> feature_importances;

    nlohmann::json to_json() const;
};

// Mann-Whitney rank AUC with midrank tie correction. labels hold 0/1.
// Returns {auc, defined}; undefined when either class is absent.
std::pair<double, bool> rank_auc(const std::vector<double>& scores,
                                 const std::vector<double>& labels);

// Point metrics at threshold 0.5, weighted by class support, plus PR curve
// over all distinct scores and the AUC above.
ClassificationReport classification_report(const std::vector<double>& scores,
                                           const std::vector<double>& labels);

double rmse(const std::vector<double>& predicted, const std::vector<double>& actual);
double mae(const std::vector<double>& predicted, const std::vector<double>& actual);

// CSV with header "threshold,precision,recall".
std::string pr_curve_csv(const std::vector<PrPoint>& curve);

}  // namespace chainscore
