#include "chainscore/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "chainscore/util/io.hpp"
#include "chainscore/util/rng.hpp"

namespace chainscore {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::LogisticRegression: return "logistic_regression";
        case Algorithm::RandomForest: return "random_forest";
        case Algorithm::GradientBoostedTrees: return "gradient_boosted_trees";
        case Algorithm::DecisionTree: return "decision_tree";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "logistic_regression") return Algorithm::LogisticRegression;
    if (name == "random_forest") return Algorithm::RandomForest;
    if (name == "gradient_boosted_trees") return Algorithm::GradientBoostedTrees;
    if (name == "decision_tree") return Algorithm::DecisionTree;
    throw std::runtime_error("unknown algorithm: " + name);
}

std::vector<Params> expand_grid(const ParamGrid& grid) {
    if (grid.empty()) throw std::runtime_error("hyperparameter grid is empty");
    for (const auto& [key, values] : grid) {
        if (values.empty()) {
            throw std::runtime_error("hyperparameter grid key '" + key + "' has no values");
        }
    }
    std::vector<Params> cells{{}};
    for (const auto& [key, values] : grid) {
        std::vector<Params> expanded;
        expanded.reserve(cells.size() * values.size());
        for (const auto& cell : cells) {
            for (const double v : values) {
                Params next = cell;
                next[key] = v;
                expanded.push_back(std::move(next));
            }
        }
        cells = std::move(expanded);
    }
    return cells;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double get_param(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_param_keys(Algorithm algorithm, const Params& params) {
    static const std::map<Algorithm, std::set<std::string>> allowed = {
        {Algorithm::LogisticRegression, {"l2"}},
        {Algorithm::RandomForest, {"max_depth", "n_trees"}},
        {Algorithm::GradientBoostedTrees, {"max_depth", "n_trees", "learning_rate"}},
        {Algorithm::DecisionTree, {"max_depth"}},
    };
    const auto& ok = allowed.at(algorithm);
    for (const auto& [key, value] : params) {
        if (!ok.count(key)) {
            throw std::runtime_error("hyperparameter '" + key + "' not recognized for " +
                                     algorithm_name(algorithm));
        }
        (void)value;
    }
}

// ------------------------------------------------------------- encoders

struct OneHotLayout {
    std::size_t width = 0;
    std::vector<std::size_t> offset;  // per feature, first encoded column
    std::vector<int> column_feature;
};

OneHotLayout one_hot_layout(const std::vector<FeatureSpec>& schema,
                            const std::vector<std::vector<std::string>>& vocab) {
    OneHotLayout layout;
    layout.offset.resize(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
        layout.offset[f] = layout.width;
        const std::size_t cols =
            schema[f].kind == FeatureKind::Categorical ? vocab[f].size() + 1 : 1;  // +1 unknown
        for (std::size_t c = 0; c < cols; ++c) layout.column_feature.push_back(static_cast<int>(f));
        layout.width += cols;
    }
    return layout;
}

int vocab_index(const std::vector<std::string>& levels, const std::string& level) {
    const auto it = std::lower_bound(levels.begin(), levels.end(), level);
    if (it == levels.end() || *it != level) return -1;
    return static_cast<int>(it - levels.begin());
}

void encode_one_hot_row(const std::vector<FeatureSpec>& schema,
                        const std::vector<std::vector<std::string>>& vocab,
                        const OneHotLayout& layout, const std::vector<FeatureValue>& row,
                        double* out, PredictStats* stats) {
    for (std::size_t f = 0; f < schema.size(); ++f) {
        if (schema[f].kind == FeatureKind::Categorical) {
            int idx = vocab_index(vocab[f], row[f].level);
            if (idx < 0) {
                idx = static_cast<int>(vocab[f].size());  // reserved unknown slot
                if (stats) ++stats->unseen_levels;
            }
            out[layout.offset[f] + static_cast<std::size_t>(idx)] = 1.0;
        } else {
            out[layout.offset[f]] = row[f].number;
        }
    }
}

EncodedMatrix encode_one_hot_train(const Dataset& d, const OneHotLayout& layout) {
    EncodedMatrix X;
    X.n = d.n_rows();
    X.p = layout.width;
    X.column_feature = layout.column_feature;
    X.values.assign(X.n * X.p, 0.0);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        double* out = X.row_ptr(r);
        for (std::size_t f = 0; f < d.n_features(); ++f) {
            if (d.feature(f).kind == FeatureKind::Categorical) {
                const auto idx = static_cast<std::size_t>(d.value(r, f));
                out[layout.offset[f] + idx] = 1.0;
            } else {
                out[layout.offset[f]] = d.value(r, f);
            }
        }
    }
    return X;
}

// Ordered target statistics for the boosting path: each training row sees
// only the rows before it in a seeded permutation, which keeps the encoding
// from leaking its own label. Inference uses the full-data table stored in
// the artifact.
struct TsEncoding {
    std::vector<std::vector<double>> tables;  // per feature, per level
    double prior = 0.0;
};

EncodedMatrix encode_ts_train(const Dataset& d, std::uint64_t seed, TsEncoding& enc_out) {
    const std::size_t n = d.n_rows();
    const std::size_t p = d.n_features();

    double prior = 0.0;
    for (std::size_t r = 0; r < n; ++r) prior += d.target(r);
    prior = n > 0 ? prior / static_cast<double>(n) : 0.0;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(Rng::derive(seed, "target_stats"));
    rng.shuffle(perm);

    EncodedMatrix X;
    X.n = n;
    X.p = p;
    X.values.assign(n * p, 0.0);
    X.column_feature.resize(p);
    std::iota(X.column_feature.begin(), X.column_feature.end(), 0);

    enc_out.tables.assign(p, {});
    enc_out.prior = prior;

    for (std::size_t f = 0; f < p; ++f) {
        if (d.feature(f).kind != FeatureKind::Categorical) {
            for (std::size_t r = 0; r < n; ++r) X.values[r * p + f] = d.value(r, f);
            continue;
        }
        const std::size_t n_levels = d.levels(f).size();
        std::vector<double> sum(n_levels, 0.0);
        std::vector<double> count(n_levels, 0.0);
        for (const std::size_t r : perm) {
            const auto level = static_cast<std::size_t>(d.value(r, f));
            X.values[r * p + f] = (sum[level] + prior) / (count[level] + 1.0);
            sum[level] += d.target(r);
            count[level] += 1.0;
        }
        enc_out.tables[f].resize(n_levels);
        for (std::size_t l = 0; l < n_levels; ++l) {
            enc_out.tables[f][l] = (sum[l] + prior) / (count[l] + 1.0);
        }
    }
    return X;
}

void encode_ts_row(const ModelArtifact& m, const std::vector<FeatureValue>& row, double* out,
                   PredictStats* stats) {
    for (std::size_t f = 0; f < m.schema.size(); ++f) {
        if (m.schema[f].kind == FeatureKind::Categorical) {
            const int idx = vocab_index(m.vocab[f], row[f].level);
            if (idx < 0) {
                out[f] = m.ts_prior;
                if (stats) ++stats->unseen_levels;
            } else {
                out[f] = m.ts_tables[f][static_cast<std::size_t>(idx)];
            }
        } else {
            out[f] = row[f].number;
        }
    }
}

// ------------------------------------------------------------- logistic

// Solves A x = b for symmetric positive definite A (in-place Cholesky).
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (d <= 0.0) d = 1e-12;
        const double l = std::sqrt(d);
        a[j * n + j] = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = v / l;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {  // L y = b
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
        b[i] = v / a[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {  // L^T x = y
        double v = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= a[k * n + ii] * b[k];
        b[ii] = v / a[ii * n + ii];
    }
    return b;
}

double logistic_loss(const EncodedMatrix& X, const std::vector<double>& y,
                     const std::vector<double>& w, const std::vector<double>& beta,
                     double intercept, double lambda) {
    double loss = 0.0;
    for (std::size_t r = 0; r < X.n; ++r) {
        double z = intercept;
        const double* row = X.values.data() + r * X.p;
        for (std::size_t c = 0; c < X.p; ++c) z += beta[c] * row[c];
        // log(1 + exp(-|z|)) form avoids overflow
        const double margin = y[r] == 1.0 ? z : -z;
        loss += w[r] * (margin > 0 ? std::log1p(std::exp(-margin))
                                   : -margin + std::log1p(std::exp(margin)));
    }
    double penalty = 0.0;
    for (const double b : beta) penalty += b * b;
    return loss + 0.5 * lambda * penalty;
}

void fit_logistic(const EncodedMatrix& X, const std::vector<double>& y,
                  const std::vector<double>& w, double lambda, std::vector<double>& beta_out,
                  double& intercept_out) {
    const std::size_t p = X.p;
    const std::size_t dim = p + 1;  // intercept last, unpenalized
    std::vector<double> beta(p, 0.0);
    double intercept = 0.0;

    std::vector<double> mu(X.n), s(X.n), g(X.n);
    double loss = logistic_loss(X, y, w, beta, intercept, lambda);

    for (int iter = 0; iter < 50; ++iter) {
        for (std::size_t r = 0; r < X.n; ++r) {
            double z = intercept;
            const double* row = X.values.data() + r * X.p;
            for (std::size_t c = 0; c < p; ++c) z += beta[c] * row[c];
            mu[r] = std::clamp(sigmoid(z), 1e-12, 1.0 - 1e-12);
            s[r] = std::max(w[r] * mu[r] * (1.0 - mu[r]), 1e-12 * w[r]);
            g[r] = w[r] * (y[r] - mu[r]);
        }

        std::vector<double> grad(dim, 0.0);
        std::vector<double> hess(dim * dim, 0.0);
        for (std::size_t r = 0; r < X.n; ++r) {
            const double* row = X.values.data() + r * X.p;
            for (std::size_t i = 0; i < p; ++i) {
                if (row[i] == 0.0) continue;
                grad[i] += g[r] * row[i];
                const double si = s[r] * row[i];
                for (std::size_t j = 0; j <= i; ++j) hess[i * dim + j] += si * row[j];
                hess[p * dim + i] += si;
            }
            grad[p] += g[r];
            hess[p * dim + p] += s[r];
        }
        for (std::size_t i = 0; i < p; ++i) {
            grad[i] -= lambda * beta[i];
            hess[i * dim + i] += lambda;
        }
        hess[p * dim + p] += 1e-12;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) hess[i * dim + j] = hess[j * dim + i];
        }

        std::vector<double> step = cholesky_solve(hess, grad);

        // Backtracking keeps Newton from overshooting on near-separable data.
        double scale = 1.0;
        bool accepted = false;
        for (int half = 0; half < 30; ++half) {
            std::vector<double> beta_try(p);
            for (std::size_t i = 0; i < p; ++i) beta_try[i] = beta[i] + scale * step[i];
            const double intercept_try = intercept + scale * step[p];
            const double loss_try = logistic_loss(X, y, w, beta_try, intercept_try, lambda);
            if (loss_try <= loss + 1e-12) {
                beta = std::move(beta_try);
                intercept = intercept_try;
                const double improvement = loss - loss_try;
                loss = loss_try;
                accepted = true;
                if (improvement < 1e-10) iter = 50;  // converged
                break;
            }
            scale /= 2.0;
        }
        if (!accepted) break;
    }
    beta_out = std::move(beta);
    intercept_out = intercept;
}

// --------------------------------------------------------------- helpers

std::vector<double> sample_weights(const Dataset& d, double class0_weight) {
    std::vector<double> w(d.n_rows(), 1.0);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        if (d.target(r) == 0.0) w[r] = class0_weight;
    }
    return w;
}

void aggregate_importance(const EncodedMatrix& X, const std::vector<double>& per_column,
                          std::size_t n_features, std::vector<double>& out) {
    out.assign(n_features, 0.0);
    for (std::size_t c = 0; c < per_column.size(); ++c) {
        out[static_cast<std::size_t>(X.column_feature[c])] += per_column[c];
    }
    double total = 0.0;
    for (const double v : out) total += v;
    if (total > 0.0) {
        for (double& v : out) v /= total;
    }
}

}  // namespace

ModelArtifact fit_with_params(Algorithm algorithm, Task task, const Dataset& train,
                              const Params& params, double class0_weight, std::uint64_t seed,
                              int jobs) {
    check_param_keys(algorithm, params);
    if (train.n_rows() == 0) throw std::runtime_error("training data is empty");
    if (task == Task::Classify) {
        if (!train.binary_target()) throw std::runtime_error("classification target must be 0/1");
        const double prev = train.positive_prevalence();
        if (prev == 0.0 || prev == 1.0) {
            throw std::runtime_error("training data has a single class");
        }
        if (class0_weight <= 0.0) throw std::runtime_error("class weights must be positive");
    }
    if (task == Task::Regress && algorithm == Algorithm::LogisticRegression) {
        throw std::runtime_error("logistic regression is not available for regression tasks");
    }

    ModelArtifact m;
    m.algorithm = algorithm;
    m.task = task;
    m.schema = train.schema();
    m.vocab = train.vocab();
    m.fingerprint = train.schema_fingerprint();
    m.hyperparameters = params;
    m.class0_weight = task == Task::Classify ? class0_weight : 1.0;
    m.train_seed = seed;

    const std::vector<double> w = task == Task::Classify ? sample_weights(train, class0_weight)
                                                         : std::vector<double>(train.n_rows(), 1.0);
    const std::vector<double>& y = train.targets();

    if (algorithm == Algorithm::LogisticRegression) {
        const OneHotLayout layout = one_hot_layout(m.schema, m.vocab);
        const EncodedMatrix X = encode_one_hot_train(train, layout);
        fit_logistic(X, y, w, get_param(params, "l2", 1.0), m.coefficients, m.intercept);
        return m;
    }

    if (algorithm == Algorithm::RandomForest) {
        const OneHotLayout layout = one_hot_layout(m.schema, m.vocab);
        const EncodedMatrix X = encode_one_hot_train(train, layout);
        TreeParams tp;
        tp.max_depth = static_cast<int>(get_param(params, "max_depth", 6));
        const int n_trees = static_cast<int>(get_param(params, "n_trees", 100));
        if (n_trees <= 0) throw std::runtime_error("random forest needs n_trees >= 1");
        tp.mtry = task == Task::Classify
                      ? std::max(1, static_cast<int>(std::sqrt(static_cast<double>(X.p))))
                      : std::max(1, static_cast<int>(X.p / 3));
        TreeTrainer trainer(X, y, w, nullptr, tp);

        m.trees.resize(static_cast<std::size_t>(n_trees));
        std::vector<std::vector<double>> importances(static_cast<std::size_t>(n_trees),
                                                     std::vector<double>(X.p, 0.0));
        parallel_for(static_cast<std::size_t>(n_trees), jobs, [&](std::size_t t) {
            Rng rng(Rng::derive(seed, "rf_tree_" + std::to_string(t)));
            std::vector<std::uint32_t> rows(X.n);
            for (auto& r : rows) r = static_cast<std::uint32_t>(rng.uniform(X.n));
            std::sort(rows.begin(), rows.end());
            m.trees[t] = trainer.grow(rows, rng, &importances[t]);
        });
        std::vector<double> per_column(X.p, 0.0);
        for (const auto& imp : importances) {
            for (std::size_t c = 0; c < X.p; ++c) per_column[c] += imp[c];
        }
        aggregate_importance(X, per_column, m.schema.size(), m.feature_importance);
        return m;
    }

    if (algorithm == Algorithm::GradientBoostedTrees) {
        TsEncoding enc;
        const EncodedMatrix X = encode_ts_train(train, seed, enc);
        m.ts_tables = std::move(enc.tables);
        m.ts_prior = enc.prior;

        TreeParams tp;
        tp.max_depth = static_cast<int>(get_param(params, "max_depth", 6));
        const int n_trees = static_cast<int>(get_param(params, "n_trees", 100));
        if (n_trees < 0) throw std::runtime_error("n_trees must be >= 0");
        m.learning_rate = get_param(params, "learning_rate", 0.1);

        double w_sum = 0.0;
        double wy_sum = 0.0;
        for (std::size_t r = 0; r < train.n_rows(); ++r) {
            w_sum += w[r];
            wy_sum += w[r] * y[r];
        }

        std::vector<double> f(train.n_rows(), 0.0);
        std::vector<double> grad(train.n_rows()), hess(train.n_rows());
        std::vector<std::uint32_t> all_rows(train.n_rows());
        std::iota(all_rows.begin(), all_rows.end(), 0);
        std::vector<double> per_column(X.p, 0.0);
        Rng rng(Rng::derive(seed, "gbt"));

        if (task == Task::Classify) {
            const double prior = std::clamp(wy_sum / w_sum, 1e-12, 1.0 - 1e-12);
            m.base_score = std::log(prior / (1.0 - prior));
            std::fill(f.begin(), f.end(), m.base_score);
            TreeTrainer trainer(X, grad, w, &hess, tp);
            for (int t = 0; t < n_trees; ++t) {
                for (std::size_t r = 0; r < train.n_rows(); ++r) {
                    const double p = sigmoid(f[r]);
                    grad[r] = y[r] - p;
                    hess[r] = std::max(p * (1.0 - p), 1e-12);
                }
                Tree tree = trainer.grow(all_rows, rng, &per_column);
                for (std::size_t r = 0; r < train.n_rows(); ++r) {
                    f[r] += m.learning_rate * tree.predict(X.values.data() + r * X.p);
                }
                m.trees.push_back(std::move(tree));
            }
        } else {
            m.base_score = wy_sum / w_sum;
            std::fill(f.begin(), f.end(), m.base_score);
            TreeTrainer trainer(X, grad, w, nullptr, tp);
            for (int t = 0; t < n_trees; ++t) {
                for (std::size_t r = 0; r < train.n_rows(); ++r) grad[r] = y[r] - f[r];
                Tree tree = trainer.grow(all_rows, rng, &per_column);
                for (std::size_t r = 0; r < train.n_rows(); ++r) {
                    f[r] += m.learning_rate * tree.predict(X.values.data() + r * X.p);
                }
                m.trees.push_back(std::move(tree));
            }
        }
        aggregate_importance(X, per_column, m.schema.size(), m.feature_importance);
        return m;
    }

    // Single decision tree.
    {
        const OneHotLayout layout = one_hot_layout(m.schema, m.vocab);
        const EncodedMatrix X = encode_one_hot_train(train, layout);
        TreeParams tp;
        tp.max_depth = static_cast<int>(get_param(params, "max_depth", 6));
        TreeTrainer trainer(X, y, w, nullptr, tp);
        std::vector<std::uint32_t> rows(X.n);
        std::iota(rows.begin(), rows.end(), 0);
        std::vector<double> per_column(X.p, 0.0);
        Rng rng(Rng::derive(seed, "decision_tree"));
        m.trees.push_back(trainer.grow(rows, rng, &per_column));
        aggregate_importance(X, per_column, m.schema.size(), m.feature_importance);
        return m;
    }
}

namespace {

void check_row_shape(const ModelArtifact& m, const std::vector<FeatureValue>& row) {
    if (row.size() != m.schema.size()) {
        throw std::runtime_error("prediction row has " + std::to_string(row.size()) +
                                 " cells, model expects " + std::to_string(m.schema.size()));
    }
    for (std::size_t f = 0; f < row.size(); ++f) {
        if (row[f].categorical != (m.schema[f].kind == FeatureKind::Categorical)) {
            throw std::runtime_error("prediction row: feature '" + m.schema[f].name +
                                     "' kind mismatch");
        }
    }
}

double raw_score_one_hot(const ModelArtifact& m, const OneHotLayout& layout,
                         const std::vector<FeatureValue>& row, std::vector<double>& scratch,
                         PredictStats* stats) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    encode_one_hot_row(m.schema, m.vocab, layout, row, scratch.data(), stats);
    if (m.algorithm == Algorithm::LogisticRegression) {
        double z = m.intercept;
        for (std::size_t c = 0; c < scratch.size(); ++c) z += m.coefficients[c] * scratch[c];
        return z;
    }
    // Forest / single tree: average of leaf values.
    double acc = 0.0;
    for (const auto& tree : m.trees) acc += tree.predict(scratch.data());
    return m.trees.empty() ? 0.0 : acc / static_cast<double>(m.trees.size());
}

double raw_score_ts(const ModelArtifact& m, const std::vector<FeatureValue>& row,
                    std::vector<double>& scratch, PredictStats* stats) {
    encode_ts_row(m, row, scratch.data(), stats);
    double f = m.base_score;
    for (const auto& tree : m.trees) f += m.learning_rate * tree.predict(scratch.data());
    return f;
}

std::vector<double> predict_raw(const ModelArtifact& m,
                                const std::vector<std::vector<FeatureValue>>& rows,
                                PredictStats* stats) {
    std::vector<double> out;
    out.reserve(rows.size());
    if (m.algorithm == Algorithm::GradientBoostedTrees) {
        std::vector<double> scratch(m.schema.size(), 0.0);
        for (const auto& row : rows) {
            check_row_shape(m, row);
            out.push_back(raw_score_ts(m, row, scratch, stats));
        }
    } else {
        const OneHotLayout layout = one_hot_layout(m.schema, m.vocab);
        std::vector<double> scratch(layout.width, 0.0);
        for (const auto& row : rows) {
            check_row_shape(m, row);
            out.push_back(raw_score_one_hot(m, layout, row, scratch, stats));
        }
    }
    return out;
}

std::vector<std::vector<FeatureValue>> dataset_rows(const Dataset& d) {
    std::vector<std::vector<FeatureValue>> rows;
    rows.reserve(d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) rows.push_back(d.row(r));
    return rows;
}

void check_fingerprint(const ModelArtifact& m, const Dataset& d) {
    if (m.fingerprint != d.schema_fingerprint()) {
        throw std::runtime_error("schema fingerprint mismatch: model " + m.fingerprint +
                                 " vs data " + d.schema_fingerprint());
    }
}

}  // namespace

std::vector<double> predict_proba_rows(const ModelArtifact& m,
                                       const std::vector<std::vector<FeatureValue>>& rows,
                                       PredictStats* stats) {
    if (m.task != Task::Classify) throw std::runtime_error("predict_proba on a regression model");
    std::vector<double> raw = predict_raw(m, rows, stats);
    switch (m.algorithm) {
        case Algorithm::LogisticRegression:
        case Algorithm::GradientBoostedTrees:
            for (double& v : raw) v = sigmoid(v);
            break;
        case Algorithm::RandomForest:
        case Algorithm::DecisionTree:
            for (double& v : raw) v = std::clamp(v, 0.0, 1.0);
            break;
    }
    return raw;
}

std::vector<double> predict_value_rows(const ModelArtifact& m,
                                       const std::vector<std::vector<FeatureValue>>& rows,
                                       PredictStats* stats) {
    if (m.task != Task::Regress) throw std::runtime_error("predict_value on a classifier");
    return predict_raw(m, rows, stats);
}

std::vector<double> predict_proba(const ModelArtifact& m, const Dataset& rows,
                                  PredictStats* stats) {
    check_fingerprint(m, rows);
    return predict_proba_rows(m, dataset_rows(rows), stats);
}

std::vector<double> predict_value(const ModelArtifact& m, const Dataset& rows,
                                  PredictStats* stats) {
    check_fingerprint(m, rows);
    return predict_value_rows(m, dataset_rows(rows), stats);
}

ClassificationReport evaluate_classifier(const ModelArtifact& m, const Dataset& test) {
    if (test.n_rows() == 0) throw std::runtime_error("evaluation set is empty");
    const std::vector<double> probs = predict_proba(m, test);
    return classification_report(probs, test.targets());
}

RegressionReport evaluate_regressor(const ModelArtifact& m, const Dataset& test) {
    if (test.n_rows() == 0) throw std::runtime_error("evaluation set is empty");
    const std::vector<double> pred = predict_value(m, test);
    RegressionReport rep;
    rep.rmse = rmse(pred, test.targets());
    rep.mae = mae(pred, test.targets());
    rep.feature_importances = m.ranked_importances();
    return rep;
}

std::vector<std::pair<std::string, double>> ModelArtifact::ranked_importances() const {
    std::vector<std::pair<std::string, double>> ranked;
    for (std::size_t f = 0; f < schema.size() && f < feature_importance.size(); ++f) {
        ranked.emplace_back(schema[f].name, feature_importance[f]);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return ranked;
}

namespace {

double metric_value(const ClassificationReport& rep, SelectionMetric metric) {
    return metric == SelectionMetric::WeightedF1 ? rep.f1_weighted : rep.recall_weighted;
}

}  // namespace

ModelArtifact train_classifier(Algorithm algorithm, const Dataset& train, double class0_weight,
                               const ParamGrid& grid, std::uint64_t seed,
                               SelectionMetric selection, int jobs) {
    const std::vector<Params> cells = expand_grid(grid);
    for (const auto& cell : cells) check_param_keys(algorithm, cell);
    if (!train.binary_target()) throw std::runtime_error("classification target must be 0/1");
    if (class0_weight <= 0.0) throw std::runtime_error("class weights must be positive");

    const auto [inner_train, inner_val] =
        stratified_split(train, 0.2, Rng::derive(seed, "grid_valid"));

    nlohmann::json grid_log = nlohmann::json::array();
    std::size_t best = 0;
    double best_metric = -1.0;
    nlohmann::json best_report;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ModelArtifact candidate =
            fit_with_params(algorithm, Task::Classify, inner_train, cells[i], class0_weight, seed,
                            jobs);
        const ClassificationReport rep = evaluate_classifier(candidate, inner_val);
        const double value = metric_value(rep, selection);
        grid_log.push_back({{"params", cells[i]}, {"metric", value}});
        if (value > best_metric) {
            best_metric = value;
            best = i;
            best_report = rep.to_json();
        }
    }

    ModelArtifact final_model =
        fit_with_params(algorithm, Task::Classify, train, cells[best], class0_weight, seed, jobs);
    final_model.training_metrics = {
        {"selection_metric",
         selection == SelectionMetric::WeightedF1 ? "f1_weighted" : "recall_weighted"},
        {"grid", grid_log},
        {"best_cell", best},
        {"best_validation", best_report},
        {"train_prevalence", train.positive_prevalence()},
    };
    return final_model;
}

ModelArtifact train_regressor(Algorithm algorithm, const Dataset& train, const ParamGrid& grid,
                              std::uint64_t seed, int jobs) {
    if (algorithm == Algorithm::LogisticRegression) {
        throw std::runtime_error("logistic regression is not available for regression tasks");
    }
    const std::vector<Params> cells = expand_grid(grid);
    for (const auto& cell : cells) check_param_keys(algorithm, cell);

    const auto [inner_train, inner_val] =
        stratified_split(train, 0.2, Rng::derive(seed, "grid_valid"));

    nlohmann::json grid_log = nlohmann::json::array();
    std::size_t best = 0;
    double best_rmse = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ModelArtifact candidate =
            fit_with_params(algorithm, Task::Regress, inner_train, cells[i], 1.0, seed, jobs);
        const std::vector<double> pred = predict_value(candidate, inner_val);
        const double value = rmse(pred, inner_val.targets());
        grid_log.push_back({{"params", cells[i]}, {"rmse", value}});
        if (value < best_rmse) {
            best_rmse = value;
            best = i;
        }
    }

    ModelArtifact final_model =
        fit_with_params(algorithm, Task::Regress, train, cells[best], 1.0, seed, jobs);
    final_model.training_metrics = {
        {"selection_metric", "rmse"},
        {"grid", grid_log},
        {"best_cell", best},
        {"best_validation_rmse", best_rmse},
    };
    return final_model;
}

// ---------------------------------------------------------- serialization

nlohmann::json ModelArtifact::to_json() const {
    nlohmann::json j;
    j["format"] = "chainscore-model";
    j["version"] = 1;
    j["algorithm"] = algorithm_name(algorithm);
    j["task"] = task == Task::Classify ? "classify" : "regress";
    nlohmann::json schema_json = nlohmann::json::array();
    for (const auto& spec : schema) {
        schema_json.push_back({{"name", spec.name}, {"kind", feature_kind_name(spec.kind)}});
    }
    j["schema"] = schema_json;
    j["vocab"] = vocab;
    j["fingerprint"] = fingerprint;
    j["hyperparameters"] = hyperparameters;
    j["class_weights"] = {{"0", class0_weight}, {"1", 1.0}};
    j["train_seed"] = train_seed;
    j["coefficients"] = coefficients;
    j["intercept"] = intercept;
    nlohmann::json trees_json = nlohmann::json::array();
    for (const auto& tree : trees) trees_json.push_back(tree.to_json());
    j["trees"] = trees_json;
    j["base_score"] = base_score;
    j["learning_rate"] = learning_rate;
    j["ts_tables"] = ts_tables;
    j["ts_prior"] = ts_prior;
    j["feature_importance"] = feature_importance;
    j["training_metrics"] = training_metrics;
    return j;
}

ModelArtifact ModelArtifact::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "chainscore-model") {
        throw std::runtime_error("not a chainscore model artifact");
    }
    if (j.value("version", 0) != 1) {
        throw std::runtime_error("unsupported model artifact version");
    }
    ModelArtifact m;
    m.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
    m.task = j.at("task").get<std::string>() == "classify" ? Task::Classify : Task::Regress;
    for (const auto& item : j.at("schema")) {
        m.schema.push_back({item.at("name").get<std::string>(),
                            feature_kind_from_name(item.at("kind").get<std::string>())});
    }
    m.vocab = j.at("vocab").get<std::vector<std::vector<std::string>>>();
    m.fingerprint = j.at("fingerprint").get<std::string>();
    m.hyperparameters = j.at("hyperparameters").get<Params>();
    m.class0_weight = j.at("class_weights").at("0").get<double>();
    m.train_seed = j.at("train_seed").get<std::uint64_t>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    for (const auto& tree_json : j.at("trees")) m.trees.push_back(Tree::from_json(tree_json));
    m.base_score = j.at("base_score").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.ts_tables = j.at("ts_tables").get<std::vector<std::vector<double>>>();
    m.ts_prior = j.at("ts_prior").get<double>();
    m.feature_importance = j.at("feature_importance").get<std::vector<double>>();
    m.training_metrics = j.value("training_metrics", nlohmann::json());
    return m;
}

}  // namespace chainscore
