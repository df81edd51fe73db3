#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/util/rng.hpp"

namespace chainscore {

// Numeric design matrix the tree learners consume. Encoded columns map back
// to schema features so importances can be aggregated per original feature.
struct EncodedMatrix {
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<double> values;       // row-major, n * p
    std::vector<int> column_feature;  // encoded column -> schema feature index

    double at(std::size_t r, std::size_t c) const { return values[r * p + c]; }
    double* row_ptr(std::size_t r) { return values.data() + r * p; }
};

struct TreeNode {
    int feature = -1;  // encoded column; -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;  // leaf payload
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(const double* row) const {
        std::int32_t i = 0;
        for (;;) {
            const TreeNode& node = nodes[i];
            if (node.feature < 0) return node.value;
            i = row[node.feature] < node.threshold ? node.left : node.right;
        }
    }

    nlohmann::json to_json() const;
    static Tree from_json(const nlohmann::json& j);
};

struct TreeParams {
    int max_depth = 6;
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    int mtry = 0;  // features sampled per split; 0 means all
};

// CART with weighted sum-of-squares splitting. For binary 0/1 targets this
// picks the same splits as weighted gini. Leaves hold
// sum(w*grad) / sum(w*hess); hess == nullptr means a weighted mean, which is
// the class-1 frequency for 0/1 targets. Feature subsampling (mtry > 0)
// draws through `rng` and is the only source of randomness.
class TreeTrainer {
public:
    TreeTrainer(const EncodedMatrix& X, const std::vector<double>& grad,
                const std::vector<double>& weight, const std::vector<double>* hess,
                const TreeParams& params);

    // `rows` may contain duplicates (bootstrap samples). `importance`
    // accumulates weighted impurity decrease per encoded column.
    Tree grow(const std::vector<std::uint32_t>& rows, Rng& rng, std::vector<double>* importance);

private:
    struct Split {
        int column = -1;
        double threshold = 0.0;
        double gain = 0.0;
    };

    std::int32_t build(std::vector<std::uint32_t>& rows, std::size_t begin, std::size_t end,
                       int depth, Rng& rng, Tree& tree, std::vector<double>* importance);
    Split best_split(const std::vector<std::uint32_t>& rows, std::size_t begin, std::size_t end,
                     Rng& rng) const;
    double leaf_value(const std::vector<std::uint32_t>& rows, std::size_t begin,
                      std::size_t end) const;

    const EncodedMatrix& X_;
    const std::vector<double>& grad_;
    const std::vector<double>& weight_;
    const std::vector<double>* hess_;
    TreeParams params_;
};

}  // namespace chainscore
