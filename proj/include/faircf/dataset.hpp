#ifndef FAIRCF_DATASET_HPP
#define FAIRCF_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "faircf/types.hpp"

namespace faircf {

/// Tabular dataset: numeric features, binary labels, binary protected-group
/// assignments. The group attribute is never part of the feature matrix.
struct Dataset {
    std::vector<FeatureVector> features;
    std::vector<int> labels;  // 0/1
    std::vector<int> groups;  // 0/1
    std::vector<std::string> feature_names;
    std::vector<std::size_t> row_ids;

    std::size_t size() const { return features.size(); }
    std::size_t dim() const { return features.empty() ? 0 : features.front().size(); }
};

/// Per-feature shift/scale fitted on a training split. Zero-variance
/// features keep divisor 1 so they come out centered, not NaN.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> std_dev;

    std::size_t dim() const { return mean.size(); }
};

/// Two-cluster-per-class synthetic data with a controllable group cost
/// disparity: group 0's class-0 cluster sits an extra `disparity` away
/// from the decision boundary along axis 0.
struct SyntheticSpec {
    std::size_t n_per_cell = 50;  // samples per (group, class) cell
    std::size_t dim = 2;
    double separation = 2.0;
    double disparity = 0.0;
    std::uint64_t seed = 0;
};

struct FoldIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& group_column);

void save_csv(const Dataset& data, const std::string& path,
              const std::string& label_column, const std::string& group_column);

Standardizer fit_standardizer(const Dataset& train);
FeatureVector standardize_row(const Standardizer& st, const FeatureVector& row);
FeatureVector unstandardize_row(const Standardizer& st, const FeatureVector& row);
Dataset apply_standardizer(const Standardizer& st, const Dataset& data);

/// Shuffled folds stratified jointly by (label, group); fold sizes differ
/// by at most one. Deterministic per seed.
std::vector<FoldIndices> kfold_split(const Dataset& data, std::size_t k,
                                     std::uint64_t seed);

Dataset generate_synthetic(const SyntheticSpec& spec);

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices);

/// Splits into (group-0, group-1) datasets, preserving row order.
std::pair<Dataset, Dataset> split_by_group(const Dataset& data);

}  // namespace faircf

#endif  // FAIRCF_DATASET_HPP
