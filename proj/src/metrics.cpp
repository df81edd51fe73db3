#include "chainscore/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chainscore {

std::pair<double, bool> rank_auc(const std::vector<double>& scores,
                                 const std::vector<double>& labels) {
    if (scores.size() != labels.size()) throw std::runtime_error("rank_auc: size mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (const double y : labels) n_pos += (y == 1.0);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return {std::nan(""), false};

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tie groups.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1.0) pos_rank_sum += midrank;
        }
        i = j;
    }
    const double u = pos_rank_sum - static_cast<double>(n_pos) * (n_pos + 1) / 2.0;
    return {u / (static_cast<double>(n_pos) * static_cast<double>(n_neg)), true};
}

namespace {

struct PerClass {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

PerClass class_metrics(std::int64_t tp, std::int64_t fp, std::int64_t fn, std::size_t support) {
    PerClass m;
    m.support = support;
    m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

std::vector<PrPoint> pr_curve_points(const std::vector<double>& scores,
                                     const std::vector<double>& labels) {
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (const double y : labels) n_pos += (y == 1.0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    // Sweep descending; one point per distinct score, where the score is the
    // threshold (predict positive iff score >= threshold).
    std::vector<PrPoint> curve;
    std::int64_t tp = 0;
    std::int64_t predicted_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            tp += labels[order[j]] == 1.0;
            ++predicted_pos;
            ++j;
        }
        PrPoint pt;
        pt.threshold = scores[order[i]];
        pt.precision = static_cast<double>(tp) / static_cast<double>(predicted_pos);
        pt.recall = n_pos > 0 ? static_cast<double>(tp) / static_cast<double>(n_pos) : 0.0;
        curve.push_back(pt);
        i = j;
    }
    std::reverse(curve.begin(), curve.end());  // thresholds strictly increasing
    return curve;
}

}  // namespace

ClassificationReport classification_report(const std::vector<double>& scores,
                                           const std::vector<double>& labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw std::runtime_error("classification_report: empty or mismatched inputs");
    }
    ClassificationReport rep;
    rep.n = scores.size();

    std::size_t support1 = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool actual = labels[i] == 1.0;
        const bool predicted = scores[i] >= 0.5;
        support1 += actual;
        if (actual && predicted) ++rep.confusion.tp;
        else if (!actual && predicted) ++rep.confusion.fp;
        else if (actual && !predicted) ++rep.confusion.fn;
        else ++rep.confusion.tn;
    }
    const std::size_t support0 = rep.n - support1;
    rep.prevalence = static_cast<double>(support1) / static_cast<double>(rep.n);

    // Class 1 viewed positively; class 0 metrics come from the mirrored
    // confusion counts.
    const PerClass c1 = class_metrics(rep.confusion.tp, rep.confusion.fp, rep.confusion.fn, support1);
    const PerClass c0 = class_metrics(rep.confusion.tn, rep.confusion.fn, rep.confusion.fp, support0);

    const double n = static_cast<double>(rep.n);
    rep.precision_weighted = (c0.precision * support0 + c1.precision * support1) / n;
    rep.recall_weighted = (c0.recall * support0 + c1.recall * support1) / n;
    rep.f1_weighted = (c0.f1 * support0 + c1.f1 * support1) / n;

    const auto [auc, defined] = rank_auc(scores, labels);
    rep.auc = auc;
    rep.auc_defined = defined;
    rep.pr_curve = pr_curve_points(scores, labels);
    return rep;
}

double rmse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.size() != actual.size() || predicted.empty()) {
        throw std::runtime_error("rmse: empty or mismatched inputs");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double e = predicted[i] - actual[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(predicted.size()));
}

double mae(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.size() != actual.size() || predicted.empty()) {
        throw std::runtime_error("mae: empty or mismatched inputs");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) acc += std::fabs(predicted[i] - actual[i]);
    return acc / static_cast<double>(predicted.size());
}

std::string pr_curve_csv(const std::vector<PrPoint>& curve) {
    std::string out = "threshold,precision,recall\n";
    char buf[128];
    for (const auto& pt : curve) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", pt.threshold, pt.precision,
                      pt.recall);
        out += buf;
    }
    return out;
}

nlohmann::json ClassificationReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["prevalence"] = prevalence;
    j["f1_weighted"] = f1_weighted;
    j["precision_weighted"] = precision_weighted;
    j["recall_weighted"] = recall_weighted;
    if (auc_defined) j["auc"] = auc;
    else j["auc"] = nullptr;
    j["confusion"] = {{"tp", confusion.tp}, {"fp", confusion.fp},
                      {"tn", confusion.tn}, {"fn", confusion.fn}};
    j["pr_curve_points"] = pr_curve.size();
    return j;
}

nlohmann::json RegressionReport::to_json() const {
    nlohmann::json j;
    j["rmse"] = rmse;
    j["mae"] = mae;
    nlohmann::json imp = nlohmann::json::array();
    for (const auto& [name, weight] : feature_importances) {
        imp.push_back({{"feature", name}, {"weight", weight}});
    }
    j["feature_importances"] = imp;
    return j;
}

}  // namespace chainscore
