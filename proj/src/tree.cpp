#include "chainscore/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chainscore {

nlohmann::json Tree::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes) {
        arr.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    }
    return arr;
}

Tree Tree::from_json(const nlohmann::json& j) {
    Tree t;
    t.nodes.reserve(j.size());
    for (const auto& item : j) {
        TreeNode n;
        n.feature = item.at(0).get<int>();
        n.threshold = item.at(1).get<double>();
        n.left = item.at(2).get<std::int32_t>();
        n.right = item.at(3).get<std::int32_t>();
        n.value = item.at(4).get<double>();
        t.nodes.push_back(n);
    }
    return t;
}

TreeTrainer::TreeTrainer(const EncodedMatrix& X, const std::vector<double>& grad,
                         const std::vector<double>& weight, const std::vector<double>* hess,
                         const TreeParams& params)
    : X_(X), grad_(grad), weight_(weight), hess_(hess), params_(params) {
    if (grad_.size() != X_.n || weight_.size() != X_.n) {
        throw std::runtime_error("tree trainer: input sizes disagree");
    }
}

Tree TreeTrainer::grow(const std::vector<std::uint32_t>& rows, Rng& rng,
                       std::vector<double>* importance) {
    if (rows.empty()) throw std::runtime_error("tree trainer: no rows");
    Tree tree;
    std::vector<std::uint32_t> work(rows);
    build(work, 0, work.size(), 0, rng, tree, importance);
    return tree;
}

double TreeTrainer::leaf_value(const std::vector<std::uint32_t>& rows, std::size_t begin,
                               std::size_t end) const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const std::uint32_t r = rows[i];
        num += weight_[r] * grad_[r];
        den += weight_[r] * (hess_ ? (*hess_)[r] : 1.0);
    }
    if (den <= 0.0) return 0.0;
    return num / den;
}

TreeTrainer::Split TreeTrainer::best_split(const std::vector<std::uint32_t>& rows,
                                           std::size_t begin, std::size_t end, Rng& rng) const {
    // Candidate columns: all, or an mtry-sized sample (sorted so the sweep
    // order, and therefore tie-breaking, is deterministic).
    std::vector<int> columns;
    if (params_.mtry <= 0 || static_cast<std::size_t>(params_.mtry) >= X_.p) {
        columns.resize(X_.p);
        std::iota(columns.begin(), columns.end(), 0);
    } else {
        std::vector<int> all(X_.p);
        std::iota(all.begin(), all.end(), 0);
        for (int k = 0; k < params_.mtry; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(rng.uniform(all.size() - k));
            std::swap(all[k], all[j]);
        }
        columns.assign(all.begin(), all.begin() + params_.mtry);
        std::sort(columns.begin(), columns.end());
    }

    double w_total = 0.0;
    double wg_total = 0.0;
    double wgg_total = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const std::uint32_t r = rows[i];
        w_total += weight_[r];
        wg_total += weight_[r] * grad_[r];
        wgg_total += weight_[r] * grad_[r] * grad_[r];
    }
    const double parent_sse = wgg_total - wg_total * wg_total / w_total;

    Split best;
    std::vector<std::pair<double, std::uint32_t>> sorted;
    sorted.reserve(end - begin);

    for (const int col : columns) {
        sorted.clear();
        for (std::size_t i = begin; i < end; ++i) {
            sorted.emplace_back(X_.at(rows[i], col), rows[i]);
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (sorted.front().first == sorted.back().first) continue;

        double w_left = 0.0;
        double wg_left = 0.0;
        double wgg_left = 0.0;
        std::size_t n_left = 0;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            const std::uint32_t r = sorted[i].second;
            w_left += weight_[r];
            wg_left += weight_[r] * grad_[r];
            wgg_left += weight_[r] * grad_[r] * grad_[r];
            ++n_left;
            if (sorted[i].first == sorted[i + 1].first) continue;
            const std::size_t n_right = sorted.size() - n_left;
            if (n_left < static_cast<std::size_t>(params_.min_samples_leaf) ||
                n_right < static_cast<std::size_t>(params_.min_samples_leaf)) {
                continue;
            }
            const double w_right = w_total - w_left;
            if (w_left <= 0.0 || w_right <= 0.0) continue;
            const double sse_left = wgg_left - wg_left * wg_left / w_left;
            const double wg_right = wg_total - wg_left;
            const double wgg_right = wgg_total - wgg_left;
            const double sse_right = wgg_right - wg_right * wg_right / w_right;
            const double gain = parent_sse - sse_left - sse_right;
            if (gain > best.gain + 1e-15) {
                best.column = col;
                best.threshold = (sorted[i].first + sorted[i + 1].first) / 2.0;
                best.gain = gain;
            }
        }
    }
    return best;
}

std::int32_t TreeTrainer::build(std::vector<std::uint32_t>& rows, std::size_t begin,
                                std::size_t end, int depth, Rng& rng, Tree& tree,
                                std::vector<double>* importance) {
    const auto make_leaf = [&]() -> std::int32_t {
        TreeNode node;
        node.value = leaf_value(rows, begin, end);
        tree.nodes.push_back(node);
        return static_cast<std::int32_t>(tree.nodes.size() - 1);
    };

    const std::size_t n = end - begin;
    if (depth >= params_.max_depth || n < static_cast<std::size_t>(params_.min_samples_split)) {
        return make_leaf();
    }

    const Split split = best_split(rows, begin, end, rng);
    if (split.column < 0 || split.gain <= 0.0) return make_leaf();

    const auto mid_it = std::partition(
        rows.begin() + static_cast<std::ptrdiff_t>(begin),
        rows.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::uint32_t r) { return X_.at(r, split.column) < split.threshold; });
    const std::size_t mid = static_cast<std::size_t>(mid_it - rows.begin());
    if (mid == begin || mid == end) return make_leaf();

    if (importance) (*importance)[split.column] += split.gain;

    const std::int32_t self = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[self].feature = split.column;
    tree.nodes[self].threshold = split.threshold;
    const std::int32_t left = build(rows, begin, mid, depth + 1, rng, tree, importance);
    const std::int32_t right = build(rows, mid, end, depth + 1, rng, tree, importance);
    tree.nodes[self].left = left;
    tree.nodes[self].right = right;
    return self;
}

}  // namespace chainscore
