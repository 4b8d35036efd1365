#include "faircf/fairness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "faircf/batch.hpp"
#include "faircf/errors.hpp"

namespace faircf {

double CostPool::mean() const {
    if (costs.empty()) throw EmptyPool("cost pool for group " +
                                       std::to_string(group_id) + " is empty");
    return mean_of(costs);
}

double CostPool::median() const {
    if (costs.empty()) throw EmptyPool("cost pool for group " +
                                       std::to_string(group_id) + " is empty");
    return median_of(costs);
}

namespace {

void validate(const FairCfConfig& cfg) {
    if (cfg.c0 <= 0.0) throw ConfigError("c0 must be > 0");
    if (cfg.c1 <= 0.0) throw ConfigError("c1 must be > 0");
    if (cfg.base.margin < 0.0 || cfg.base.margin >= 0.5)
        throw ConfigError("loss margin must be in [0, 0.5)");
}

CostPool pool_from_results(const std::vector<CounterfactualResult>& results,
                           int group_id) {
    CostPool pool;
    pool.group_id = group_id;
    for (const auto& r : results) {
        if (!r.valid) continue;
        pool.costs.push_back(r.cost);
    }
    pool.source_count = pool.costs.size();
    if (pool.costs.empty())
        throw EmptyPool("group " + std::to_string(group_id) +
                        " produced no valid counterfactual costs");
    return pool;
}

}  // namespace

std::pair<CostPool, CostPool> compute_cost_pools(
    const PredictionModel& model, const Dataset& group0, const Dataset& group1,
    const CfConfig& cfg, const SimplexConfig& simplex, CfMode mode,
    const Dataset& candidates, const BatchOptions& opts) {
    if (group0.size() == 0 || group1.size() == 0)
        throw EmptyPool("both group datasets must be nonempty");

    auto explain_group = [&](const Dataset& group, int group_id) {
        std::vector<FeatureVector> points;
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (model.predict(group.features[i]) != group.labels[i]) continue;
            points.push_back(group.features[i]);
        }
        if (points.empty())
            throw EmptyPool("group " + std::to_string(group_id) +
                            " has no correctly classified samples");
        const auto results = mode == CfMode::Closest
                                 ? closest_batch(model, points, cfg, simplex, opts)
                                 : plausible_batch(model, points, candidates, opts);
        return pool_from_results(results, group_id);
    };

    return {explain_group(group0, 0), explain_group(group1, 1)};
}

const CostPool& disadvantaged_pool(const CostPool& a, const CostPool& b) {
    return a.mean() > b.mean() ? a : b;
}

double sample_z(const CostPool& pool, Rng& rng) {
    if (pool.costs.empty())
        throw EmptyPool("cannot sample from an empty cost pool");
    return pool.costs[static_cast<std::size_t>(rng() % pool.costs.size())];
}

CounterfactualResult fair_counterfactual(const PredictionModel& model,
                                         const FeatureVector& x_orig, double z,
                                         const FairCfConfig& cfg, CfMode mode,
                                         const Dataset& candidates,
                                         const SimplexConfig& simplex) {
    validate(cfg);
    if (z < 0.0) throw ConfigError("sampled cost z must be nonnegative");

    const int y_cf = target_label(model, x_orig);
    const auto objective = [&](const FeatureVector& x) {
        const double dist = theta(x_orig, x);
        return dist + cfg.c0 * cf_loss(model, x, y_cf, cfg.base.margin) +
               cfg.c1 * std::max(0.0, z - dist);
    };

    CounterfactualResult result;
    result.x_orig = x_orig;
    result.y_cf = y_cf;

    if (mode == CfMode::Closest) {
        const auto accept = [&](const FeatureVector& x) {
            return model.predict(x) == y_cf;
        };
        const MinimizeResult run =
            cfg.base.check_validity
                ? minimize_with_restarts(objective, x_orig, simplex, accept)
                : minimize(objective, x_orig, simplex);
        result.x_cf = run.argmin;
        result.cost = theta(x_orig, run.argmin);
        result.valid = model.predict(run.argmin) == y_cf;
        result.method = CfMethod::FairClosest;
        result.iterations = run.iterations;
        return result;
    }

    if (candidates.size() == 0) throw EmptyDataset("no counterfactual candidates");
    std::size_t best = candidates.size();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (model.predict(candidates.features[i]) != y_cf) continue;
        const double value = objective(candidates.features[i]);
        if (value < best_value) {  // ties keep the lowest index
            best_value = value;
            best = i;
        }
    }
    if (best == candidates.size())
        throw NoValidCandidate("no candidate is predicted as the target label");

    result.x_cf = candidates.features[best];
    result.cost = theta(x_orig, result.x_cf);
    result.valid = true;
    result.method = CfMethod::FairPlausible;
    result.iterations = 0;
    return result;
}

FairnessGapReport fairness_gap(const CostPool& costs0, const CostPool& costs1) {
    FairnessGapReport report;
    report.mean0 = costs0.mean();
    report.mean1 = costs1.mean();
    report.median0 = costs0.median();
    report.median1 = costs1.median();
    report.mean_gap = std::abs(report.mean0 - report.mean1);
    report.median_gap = std::abs(report.median0 - report.median1);
    return report;
}

std::string pools_to_csv(const std::vector<CostPool>& pools) {
    std::string out = "group_id,cost\n";
    char buf[64];
    for (const auto& pool : pools) {
        for (double cost : pool.costs) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g\n", pool.group_id, cost);
            out += buf;
        }
    }
    return out;
}

std::vector<CostPool> pools_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw EmptyPool("empty cost pool document");

    CostPool by_group[2];
    by_group[0].group_id = 0;
    by_group[1].group_id = 1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw NonNumericCell("pool row " + std::to_string(row) + " needs two columns");
        const std::string gid = line.substr(0, comma);
        const std::string cost_text = line.substr(comma + 1);
        int group = 0;
        if (gid == "0") group = 0;
        else if (gid == "1") group = 1;
        else throw NonBinaryLabel("pool group id must be 0 or 1, found '" + gid + "'");
        double cost = 0.0;
        const char* first = cost_text.data();
        const char* last = cost_text.data() + cost_text.size();
        auto trimmed_last = last;
        while (trimmed_last > first &&
               (*(trimmed_last - 1) == '\r' || *(trimmed_last - 1) == ' '))
            --trimmed_last;
        auto [ptr, ec] = std::from_chars(first, trimmed_last, cost);
        if (ec != std::errc{} || ptr != trimmed_last)
            throw NonNumericCell("bad cost '" + cost_text + "' in pool row " +
                                 std::to_string(row));
        by_group[group].costs.push_back(cost);
        ++row;
    }

    std::vector<CostPool> pools;
    for (auto& pool : by_group) {
        if (pool.costs.empty()) continue;
        pool.source_count = pool.costs.size();
        pools.push_back(std::move(pool));
    }
    if (pools.empty()) throw EmptyPool("cost pool document holds no costs");
    return pools;
}

std::vector<CostPool> load_pools_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FaircfError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return pools_from_csv(buffer.str());
}

}  // namespace faircf
