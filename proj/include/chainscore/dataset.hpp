#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chainscore {

enum class FeatureKind { Categorical, Continuous, Discrete };

std::string feature_kind_name(FeatureKind k);
FeatureKind feature_kind_from_name(const std::string& name);

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Continuous;

    bool operator==(const FeatureSpec&) const = default;
};

// One cell of a row: a categorical level or a numeric value.
struct FeatureValue {
    bool categorical = false;
    std::string level;
    double number = 0.0;

    static FeatureValue cat(std::string v) { return {true, std::move(v), 0.0}; }
    static FeatureValue num(double v) { return {false, {}, v}; }
};

// Immutable tabular training/evaluation data. Categorical cells are stored
// as indices into a per-feature vocabulary built once at construction
// (sorted unique levels), numeric cells as doubles. Non-finite numerics are
// rejected at build time, naming the offending row_id.
class Dataset {
public:
    std::size_t n_rows() const { return row_ids_.size(); }
    std::size_t n_features() const { return schema_.size(); }

    const std::vector<FeatureSpec>& schema() const { return schema_; }
    const FeatureSpec& feature(std::size_t f) const { return schema_.at(f); }
    const std::vector<std::string>& levels(std::size_t f) const { return vocab_.at(f); }
    const std::vector<std::vector<std::string>>& vocab() const { return vocab_; }

    // Numeric value, or vocabulary index for categorical features.
    double value(std::size_t r, std::size_t f) const { return values_[r * schema_.size() + f]; }
    const std::string& level_of(std::size_t r, std::size_t f) const;

    double target(std::size_t r) const { return target_[r]; }
    const std::vector<double>& targets() const { return target_; }
    const std::string& row_id(std::size_t r) const { return row_ids_[r]; }

    FeatureValue cell(std::size_t r, std::size_t f) const;
    std::vector<FeatureValue> row(std::size_t r) const;

    // Share of rows with target == 1 (meaningful for binary targets).
    double positive_prevalence() const;
    bool binary_target() const;

    Dataset subset(const std::vector<std::size_t>& rows) const;

    // Hash of feature names and kinds (not the vocabulary): two datasets
    // with the same columns interoperate even if their level sets differ.
    std::string schema_fingerprint() const;

private:
    friend class DatasetBuilder;

    std::vector<FeatureSpec> schema_;
    std::vector<std::vector<std::string>> vocab_;
    std::vector<double> values_;
    std::vector<double> target_;
    std::vector<std::string> row_ids_;
};

class DatasetBuilder {
public:
    explicit DatasetBuilder(std::vector<FeatureSpec> schema);

    void add_row(std::string row_id, const std::vector<FeatureValue>& cells, double target);
    std::size_t pending_rows() const { return raw_rows_.size(); }

    Dataset build();

private:
    std::vector<FeatureSpec> schema_;
    std::vector<std::vector<FeatureValue>> raw_rows_;
    std::vector<double> targets_;
    std::vector<std::string> row_ids_;
};

std::string schema_fingerprint(const std::vector<FeatureSpec>& schema);

// Deterministic stratified split. Binary targets stratify on the class;
// other targets are discretized into up to four quantile bins first. Every
// stratum must hold at least two rows. Per-stratum test counts are
// round(n_c * test_fraction), so exact proportions are met whenever the
// product is integral and are within one row otherwise. Row order inside
// each side follows the parent dataset.
std::pair<Dataset, Dataset> stratified_split(const Dataset& d, double test_fraction,
                                             std::uint64_t seed);

}  // namespace chainscore
