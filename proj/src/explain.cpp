#include "faircf/explain.hpp"

#include <cmath>
#include <limits>

#include "faircf/errors.hpp"

namespace faircf {

std::string to_string(CfMethod method) {
    switch (method) {
        case CfMethod::Closest: return "closest";
        case CfMethod::Plausible: return "plausible";
        case CfMethod::FairClosest: return "fair-closest";
        case CfMethod::FairPlausible: return "fair-plausible";
    }
    return "unknown";
}

std::string to_string(CfMode mode) {
    return mode == CfMode::Closest ? "closest" : "plausible";
}

CfMode cf_mode_from_string(const std::string& name) {
    if (name == "closest") return CfMode::Closest;
    if (name == "plausible") return CfMode::Plausible;
    throw ConfigError("unknown counterfactual mode '" + name + "'");
}

namespace {

void validate(const CfConfig& cfg) {
    if (cfg.loss_weight <= 0.0) throw ConfigError("loss weight must be > 0");
    if (cfg.margin < 0.0 || cfg.margin >= 0.5)
        throw ConfigError("loss margin must be in [0, 0.5)");
}

}  // namespace

double theta(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("theta over vectors of dimension " +
                                std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
    return sum;
}

int target_label(const PredictionModel& model, const FeatureVector& x_orig) {
    return 1 - model.predict(x_orig);
}

double cf_loss(const PredictionModel& model, const FeatureVector& x, int y_cf,
               double margin) {
    const double s = model.score(x);
    if (y_cf == 1) return std::max(0.0, 0.5 + margin - s);
    return std::max(0.0, s - (0.5 - margin));
}

CounterfactualResult closest_counterfactual(const PredictionModel& model,
                                            const FeatureVector& x_orig,
                                            const CfConfig& cfg,
                                            const SimplexConfig& simplex) {
    validate(cfg);
    const int y_cf = target_label(model, x_orig);
    const auto objective = [&](const FeatureVector& x) {
        return theta(x_orig, x) + cfg.loss_weight * cf_loss(model, x, y_cf, cfg.margin);
    };

    const auto accept = [&](const FeatureVector& x) {
        return model.predict(x) == y_cf;
    };
    const MinimizeResult run =
        cfg.check_validity ? minimize_with_restarts(objective, x_orig, simplex, accept)
                           : minimize(objective, x_orig, simplex);

    CounterfactualResult result;
    result.x_orig = x_orig;
    result.x_cf = run.argmin;
    result.y_cf = y_cf;
    result.cost = theta(x_orig, run.argmin);
    result.valid = model.predict(run.argmin) == y_cf;
    result.method = CfMethod::Closest;
    result.iterations = run.iterations;
    return result;
}

CounterfactualResult plausible_counterfactual(const PredictionModel& model,
                                              const FeatureVector& x_orig,
                                              const Dataset& candidates) {
    if (candidates.size() == 0) throw EmptyDataset("no counterfactual candidates");
    const int y_cf = target_label(model, x_orig);

    std::size_t best = candidates.size();
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (model.predict(candidates.features[i]) != y_cf) continue;
        const double cost = theta(x_orig, candidates.features[i]);
        if (cost < best_cost) {  // strict: ties keep the lowest index
            best_cost = cost;
            best = i;
        }
    }
    if (best == candidates.size())
        throw NoValidCandidate("no candidate is predicted as the target label");

    CounterfactualResult result;
    result.x_orig = x_orig;
    result.x_cf = candidates.features[best];
    result.y_cf = y_cf;
    result.cost = best_cost;
    result.valid = true;
    result.method = CfMethod::Plausible;
    result.iterations = 0;
    return result;
}

}  // namespace faircf
