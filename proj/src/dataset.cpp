#include "chainscore/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "chainscore/util/hash.hpp"
#include "chainscore/util/rng.hpp"

namespace chainscore {

std::string feature_kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::Categorical: return "categorical";
        case FeatureKind::Continuous: return "continuous";
        case FeatureKind::Discrete: return "discrete";
    }
    return "?";
}

FeatureKind feature_kind_from_name(const std::string& name) {
    if (name == "categorical") return FeatureKind::Categorical;
    if (name == "continuous") return FeatureKind::Continuous;
    if (name == "discrete") return FeatureKind::Discrete;
    throw std::runtime_error("unknown feature kind: " + name);
}

const std::string& Dataset::level_of(std::size_t r, std::size_t f) const {
    const auto idx = static_cast<std::size_t>(value(r, f));
    return vocab_.at(f).at(idx);
}

FeatureValue Dataset::cell(std::size_t r, std::size_t f) const {
    if (schema_[f].kind == FeatureKind::Categorical) return FeatureValue::cat(level_of(r, f));
    return FeatureValue::num(value(r, f));
}

std::vector<FeatureValue> Dataset::row(std::size_t r) const {
    std::vector<FeatureValue> out;
    out.reserve(schema_.size());
    for (std::size_t f = 0; f < schema_.size(); ++f) out.push_back(cell(r, f));
    return out;
}

double Dataset::positive_prevalence() const {
    if (target_.empty()) return 0.0;
    double pos = 0.0;
    for (const double t : target_) pos += (t == 1.0) ? 1.0 : 0.0;
    return pos / static_cast<double>(target_.size());
}

bool Dataset::binary_target() const {
    return std::all_of(target_.begin(), target_.end(),
                       [](double t) { return t == 0.0 || t == 1.0; });
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
    Dataset out;
    out.schema_ = schema_;
    out.vocab_ = vocab_;
    out.values_.reserve(rows.size() * schema_.size());
    out.target_.reserve(rows.size());
    out.row_ids_.reserve(rows.size());
    for (const std::size_t r : rows) {
        if (r >= n_rows()) throw std::out_of_range("dataset subset: row index out of range");
        for (std::size_t f = 0; f < schema_.size(); ++f) out.values_.push_back(value(r, f));
        out.target_.push_back(target_[r]);
        out.row_ids_.push_back(row_ids_[r]);
    }
    return out;
}

std::string schema_fingerprint(const std::vector<FeatureSpec>& schema) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& spec : schema) {
        h = fnv1a(spec.name, h);
        h = fnv1a("\x1f", h);
        h = fnv1a(feature_kind_name(spec.kind), h);
        h = fnv1a("\x1e", h);
    }
    return hex64(h);
}

std::string Dataset::schema_fingerprint() const { return chainscore::schema_fingerprint(schema_); }

DatasetBuilder::DatasetBuilder(std::vector<FeatureSpec> schema) : schema_(std::move(schema)) {
    if (schema_.empty()) throw std::runtime_error("dataset schema must not be empty");
}

void DatasetBuilder::add_row(std::string row_id, const std::vector<FeatureValue>& cells,
                             double target) {
    if (cells.size() != schema_.size()) {
        throw std::runtime_error("row '" + row_id + "' has " + std::to_string(cells.size()) +
                                 " cells, schema expects " + std::to_string(schema_.size()));
    }
    for (std::size_t f = 0; f < cells.size(); ++f) {
        const bool want_cat = schema_[f].kind == FeatureKind::Categorical;
        if (cells[f].categorical != want_cat) {
            throw std::runtime_error("row '" + row_id + "': feature '" + schema_[f].name +
                                     "' kind mismatch");
        }
        if (!want_cat && !std::isfinite(cells[f].number)) {
            throw std::runtime_error("row '" + row_id + "': non-finite value for feature '" +
                                     schema_[f].name + "'");
        }
    }
    if (!std::isfinite(target)) {
        throw std::runtime_error("row '" + row_id + "': non-finite target");
    }
    raw_rows_.push_back(cells);
    targets_.push_back(target);
    row_ids_.push_back(std::move(row_id));
}

Dataset DatasetBuilder::build() {
    Dataset out;
    out.schema_ = schema_;
    out.vocab_.resize(schema_.size());

    std::vector<std::map<std::string, std::size_t>> index(schema_.size());
    for (std::size_t f = 0; f < schema_.size(); ++f) {
        if (schema_[f].kind != FeatureKind::Categorical) continue;
        std::set<std::string> levels;
        for (const auto& row : raw_rows_) levels.insert(row[f].level);
        out.vocab_[f].assign(levels.begin(), levels.end());
        for (std::size_t i = 0; i < out.vocab_[f].size(); ++i) index[f][out.vocab_[f][i]] = i;
    }

    out.values_.reserve(raw_rows_.size() * schema_.size());
    for (const auto& row : raw_rows_) {
        for (std::size_t f = 0; f < schema_.size(); ++f) {
            if (schema_[f].kind == FeatureKind::Categorical) {
                out.values_.push_back(static_cast<double>(index[f][row[f].level]));
            } else {
                out.values_.push_back(row[f].number);
            }
        }
    }
    out.target_ = std::move(targets_);
    out.row_ids_ = std::move(row_ids_);
    return out;
}

namespace {

// Stratum key per row: the class itself for binary targets, else a quantile
// bin index.
std::vector<int> stratum_keys(const Dataset& d) {
    std::vector<int> keys(d.n_rows(), 0);
    if (d.binary_target()) {
        for (std::size_t r = 0; r < d.n_rows(); ++r) keys[r] = d.target(r) == 1.0 ? 1 : 0;
        return keys;
    }
    std::vector<double> sorted(d.targets());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t bins = std::min<std::size_t>(4, sorted.size());
    std::vector<double> edges;
    for (std::size_t b = 1; b < bins; ++b) {
        edges.push_back(sorted[sorted.size() * b / bins]);
    }
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        int k = 0;
        for (const double e : edges) {
            if (d.target(r) >= e) ++k;
        }
        keys[r] = k;
    }
    return keys;
}

}  // namespace

std::pair<Dataset, Dataset> stratified_split(const Dataset& d, double test_fraction,
                                             std::uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction >= 1.0) {
        throw std::runtime_error("test_fraction must be in (0, 1)");
    }
    const std::vector<int> keys = stratum_keys(d);

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t r = 0; r < d.n_rows(); ++r) by_class[keys[r]].push_back(r);
    for (const auto& [cls, rows] : by_class) {
        if (rows.size() < 2) {
            throw std::runtime_error("stratified_split: class " + std::to_string(cls) +
                                     " has fewer than 2 rows");
        }
    }

    Rng rng(Rng::derive(seed, "stratified_split"));
    std::vector<std::size_t> test_rows;
    std::vector<std::size_t> train_rows;
    for (auto& [cls, rows] : by_class) {
        rng.shuffle(rows);
        const auto n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(rows.size()) * test_fraction));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            (i < n_test ? test_rows : train_rows).push_back(rows[i]);
        }
    }
    std::sort(test_rows.begin(), test_rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    return {d.subset(train_rows), d.subset(test_rows)};
}

}  // namespace chainscore
