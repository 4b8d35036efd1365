#ifndef FAIRCF_FAIRNESS_HPP
#define FAIRCF_FAIRNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "faircf/explain.hpp"
#include "faircf/types.hpp"

namespace faircf {

struct BatchOptions;  // batch.hpp

/// The multiset of counterfactual costs observed for one protected group.
struct CostPool {
    std::vector<double> costs;
    int group_id = 0;
    std::size_t source_count = 0;  // samples whose counterfactual was valid

    double mean() const;
    double median() const;
};

struct FairCfConfig {
    double c0 = 100.0;  // prediction-loss weight
    double c1 = 10.0;   // hinge weight pushing cost up toward z
    std::uint64_t seed = 0;
    CfConfig base;
};

struct FairnessGapReport {
    double mean_gap = 0.0;
    double median_gap = 0.0;
    double mean0 = 0.0, mean1 = 0.0;
    double median0 = 0.0, median1 = 0.0;
};

/// Per-group cost estimation: explains every correctly classified sample
/// of each group and pools the costs of the valid counterfactuals.
/// `candidates` is only consulted in Plausible mode.
std::pair<CostPool, CostPool> compute_cost_pools(
    const PredictionModel& model, const Dataset& group0, const Dataset& group1,
    const CfConfig& cfg, const SimplexConfig& simplex, CfMode mode,
    const Dataset& candidates, const BatchOptions& opts);

/// The group whose mean cost is strictly larger; ties go to the second.
const CostPool& disadvantaged_pool(const CostPool& a, const CostPool& b);

/// Uniform draw from the pool. Deterministic for a fixed generator state.
double sample_z(const CostPool& pool, Rng& rng);

/// Group-fair counterfactual: minimizes
///   theta + c0 * loss + c1 * max(0, z - theta)
/// so the achieved cost is pulled up toward z when z exceeds the closest
/// cost. Closest mode solves from x_orig; Plausible mode scans candidates
/// predicted as the target label for the objective argmin.
CounterfactualResult fair_counterfactual(const PredictionModel& model,
                                         const FeatureVector& x_orig, double z,
                                         const FairCfConfig& cfg, CfMode mode,
                                         const Dataset& candidates,
                                         const SimplexConfig& simplex = {});

FairnessGapReport fairness_gap(const CostPool& costs0, const CostPool& costs1);

/// Two-column CSV (group_id, cost) for histogram export and CLI reuse.
std::string pools_to_csv(const std::vector<CostPool>& pools);
std::vector<CostPool> pools_from_csv(const std::string& text);
std::vector<CostPool> load_pools_csv(const std::string& path);

}  // namespace faircf

#endif  // FAIRCF_FAIRNESS_HPP
