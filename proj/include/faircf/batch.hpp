#ifndef FAIRCF_BATCH_HPP
#define FAIRCF_BATCH_HPP

#include <vector>

#include "faircf/explain.hpp"
#include "faircf/fairness.hpp"

namespace faircf {

// Per-sample counterfactual search is embarrassingly parallel: the model is
// read-shared and every solve depends only on its own inputs (z values are
// drawn up front). The OpenMP kernels below write results by index, so they
// match the serial reference implementations bit for bit at any thread count.

struct BatchOptions {
    int threads = 0;  // 0: FAIRCF_THREADS env var if set, else OpenMP default
};

int resolve_thread_count(const BatchOptions& opts);

std::vector<CounterfactualResult> closest_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const CfConfig& cfg, const SimplexConfig& simplex);

std::vector<CounterfactualResult> closest_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const CfConfig& cfg, const SimplexConfig& simplex,
    const BatchOptions& opts = {});

std::vector<CounterfactualResult> plausible_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const Dataset& candidates);

std::vector<CounterfactualResult> plausible_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const Dataset& candidates, const BatchOptions& opts = {});

// zs holds one pre-drawn cost from the disadvantaged pool per point.
std::vector<CounterfactualResult> fair_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const std::vector<double>& zs, const FairCfConfig& cfg, CfMode mode,
    const Dataset& candidates, const SimplexConfig& simplex);

std::vector<CounterfactualResult> fair_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const std::vector<double>& zs, const FairCfConfig& cfg, CfMode mode,
    const Dataset& candidates, const SimplexConfig& simplex,
    const BatchOptions& opts = {});

}  // namespace faircf

#endif  // FAIRCF_BATCH_HPP
