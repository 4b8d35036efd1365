#include "faircf/batch.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

#include "faircf/errors.hpp"

namespace faircf {

int resolve_thread_count(const BatchOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    if (const char* env = std::getenv("FAIRCF_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 1)
            throw ConfigError("FAIRCF_THREADS must be a positive integer, got '" +
                              std::string(env) + "'");
        return static_cast<int>(parsed);
    }
    return omp_get_max_threads();
}

namespace {

// Runs body(i) for every index, fanning out over OpenMP threads. Results are
// written by index so the output is independent of the schedule; the first
// (lowest-index) exception wins, mirroring a serial loop.
template <typename Body>
void parallel_indexed(std::size_t n, int threads, const Body& body) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<CounterfactualResult> closest_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const CfConfig& cfg, const SimplexConfig& simplex) {
    std::vector<CounterfactualResult> results(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        results[i] = closest_counterfactual(model, points[i], cfg, simplex);
    return results;
}

std::vector<CounterfactualResult> closest_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const CfConfig& cfg, const SimplexConfig& simplex, const BatchOptions& opts) {
    std::vector<CounterfactualResult> results(points.size());
    parallel_indexed(points.size(), resolve_thread_count(opts), [&](std::size_t i) {
        results[i] = closest_counterfactual(model, points[i], cfg, simplex);
    });
    return results;
}

std::vector<CounterfactualResult> plausible_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const Dataset& candidates) {
    std::vector<CounterfactualResult> results(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        results[i] = plausible_counterfactual(model, points[i], candidates);
    return results;
}

std::vector<CounterfactualResult> plausible_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const Dataset& candidates, const BatchOptions& opts) {
    std::vector<CounterfactualResult> results(points.size());
    parallel_indexed(points.size(), resolve_thread_count(opts), [&](std::size_t i) {
        results[i] = plausible_counterfactual(model, points[i], candidates);
    });
    return results;
}

std::vector<CounterfactualResult> fair_batch_serial(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const std::vector<double>& zs, const FairCfConfig& cfg, CfMode mode,
    const Dataset& candidates, const SimplexConfig& simplex) {
    if (zs.size() != points.size())
        throw ConfigError("need exactly one pre-drawn z per point");
    std::vector<CounterfactualResult> results(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        results[i] = fair_counterfactual(model, points[i], zs[i], cfg, mode,
                                         candidates, simplex);
    return results;
}

std::vector<CounterfactualResult> fair_batch(
    const PredictionModel& model, const std::vector<FeatureVector>& points,
    const std::vector<double>& zs, const FairCfConfig& cfg, CfMode mode,
    const Dataset& candidates, const SimplexConfig& simplex,
    const BatchOptions& opts) {
    if (zs.size() != points.size())
        throw ConfigError("need exactly one pre-drawn z per point");
    std::vector<CounterfactualResult> results(points.size());
    parallel_indexed(points.size(), resolve_thread_count(opts), [&](std::size_t i) {
        results[i] = fair_counterfactual(model, points[i], zs[i], cfg, mode,
                                         candidates, simplex);
    });
    return results;
}

}  // namespace faircf
