#ifndef FAIRCF_EXPLAIN_HPP
#define FAIRCF_EXPLAIN_HPP

#include <string>

#include "faircf/dataset.hpp"
#include "faircf/model.hpp"
#include "faircf/simplex.hpp"
#include "faircf/types.hpp"

namespace faircf {

enum class CfMode { Closest, Plausible };

enum class CfMethod { Closest, Plausible, FairClosest, FairPlausible };

std::string to_string(CfMethod method);
std::string to_string(CfMode mode);
CfMode cf_mode_from_string(const std::string& name);

struct CfConfig {
    // Weight of the prediction-loss term relative to the distance term:
    // the solver minimizes theta(x, x_orig) + loss_weight * loss(h(x), y_cf).
    double loss_weight = 100.0;
    double margin = 0.05;  // score margin the loss demands beyond 0.5
    bool check_validity = true;
};

struct CounterfactualResult {
    FeatureVector x_orig;
    FeatureVector x_cf;
    int y_cf = 0;
    double cost = 0.0;  // theta(x_orig, x_cf), recomputable
    bool valid = false; // predict(x_cf) == y_cf
    CfMethod method = CfMethod::Closest;
    int iterations = 0;
};

/// 1-norm distance; the cost proxy for how hard the recommended change is.
double theta(const FeatureVector& a, const FeatureVector& b);

/// Binary targets make the requested label the flip of the current one.
int target_label(const PredictionModel& model, const FeatureVector& x_orig);

/// Hinge on the class-1 score: zero exactly when the prediction reaches
/// y_cf with at least `margin` to spare.
double cf_loss(const PredictionModel& model, const FeatureVector& x,
               int y_cf, double margin);

/// Closest counterfactual: derivative-free minimization of
/// theta + loss_weight * loss starting from x_orig. If the first solve
/// ends invalid, one restart from its best point with a halved step.
CounterfactualResult closest_counterfactual(const PredictionModel& model,
                                            const FeatureVector& x_orig,
                                            const CfConfig& cfg = {},
                                            const SimplexConfig& simplex = {});

/// Plausible counterfactual: the nearest candidate already predicted as
/// the target label. Ties go to the lowest candidate index.
CounterfactualResult plausible_counterfactual(const PredictionModel& model,
                                              const FeatureVector& x_orig,
                                              const Dataset& candidates);

}  // namespace faircf

#endif  // FAIRCF_EXPLAIN_HPP
