// Compares the serial reference counterfactual kernels against the OpenMP
// ones on a synthetic workload and prints the timings.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "faircf/batch.hpp"
#include "faircf/dataset.hpp"
#include "faircf/explain.hpp"
#include "faircf/fairness.hpp"
#include "faircf/model.hpp"

using namespace faircf;

namespace {

double run_ms(const std::function<void()>& fn, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"faircf batch kernel benchmark: serial reference vs OpenMP"};
    std::size_t n_per_cell = 100;
    int repeats = 3;
    int threads = 0;
    app.add_option("--n-per-cell", n_per_cell, "Samples per (group, class) cell");
    app.add_option("--repeats", repeats, "Timing repeats (best is reported)");
    app.add_option("--threads", threads, "Worker threads (0 = default)");
    CLI11_PARSE(app, argc, argv);

    SyntheticSpec spec;
    spec.n_per_cell = n_per_cell;
    spec.dim = 5;
    spec.separation = 2.0;
    spec.disparity = 3.0;
    spec.seed = 17;
    const Dataset data = generate_synthetic(spec);
    const LogisticModel model = train_logreg(data);

    std::vector<FeatureVector> points;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (model.predict(data.features[i]) != data.labels[i]) continue;
        points.push_back(data.features[i]);
    }

    const CfConfig cfg;
    const SimplexConfig simplex;
    BatchOptions opts;
    opts.threads = threads;

    FairCfConfig fair_cfg;
    Rng rng(7);
    CostPool pool;
    pool.costs = {1.0, 2.0, 3.5, 5.0};
    std::vector<double> zs(points.size());
    for (double& z : zs) z = sample_z(pool, rng);

    std::printf("points: %zu, threads: %d\n", points.size(),
                resolve_thread_count(opts));

    std::vector<CounterfactualResult> serial, parallel;
    const double closest_serial_ms = run_ms(
        [&] { serial = closest_batch_serial(model, points, cfg, simplex); }, repeats);
    const double closest_parallel_ms = run_ms(
        [&] { parallel = closest_batch(model, points, cfg, simplex, opts); }, repeats);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].x_cf == parallel[i].x_cf && serial[i].cost == parallel[i].cost;

    const double fair_serial_ms = run_ms(
        [&] {
            serial = fair_batch_serial(model, points, zs, fair_cfg, CfMode::Closest,
                                       data, simplex);
        },
        repeats);
    const double fair_parallel_ms = run_ms(
        [&] {
            parallel = fair_batch(model, points, zs, fair_cfg, CfMode::Closest, data,
                                  simplex, opts);
        },
        repeats);
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].x_cf == parallel[i].x_cf && serial[i].cost == parallel[i].cost;

    std::printf("%-16s %12s %12s %9s\n", "kernel", "serial ms", "omp ms", "speedup");
    std::printf("%-16s %12.1f %12.1f %8.2fx\n", "closest_batch", closest_serial_ms,
                closest_parallel_ms, closest_serial_ms / closest_parallel_ms);
    std::printf("%-16s %12.1f %12.1f %8.2fx\n", "fair_batch", fair_serial_ms,
                fair_parallel_ms, fair_serial_ms / fair_parallel_ms);
    std::printf("serial/omp results identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
