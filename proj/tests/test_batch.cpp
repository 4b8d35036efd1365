#include <cstdlib>

#include "doctest.h"
#include "fixtures.hpp"

#include "faircf/batch.hpp"
#include "faircf/errors.hpp"

using namespace faircf;

namespace {

bool same_results(const std::vector<CounterfactualResult>& a,
                  const std::vector<CounterfactualResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].x_cf != b[i].x_cf) return false;
        if (a[i].cost != b[i].cost) return false;
        if (a[i].valid != b[i].valid) return false;
        if (a[i].y_cf != b[i].y_cf) return false;
        if (a[i].iterations != b[i].iterations) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("openmp kernels match the serial reference bit for bit") {
    SyntheticSpec spec;
    spec.n_per_cell = 15;
    spec.dim = 4;
    spec.separation = 2.0;
    spec.disparity = 2.0;
    spec.seed = 23;
    const Dataset data = generate_synthetic(spec);
    const LogisticModel model = train_logreg(data);

    std::vector<FeatureVector> points;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (model.predict(data.features[i]) != data.labels[i]) continue;
        points.push_back(data.features[i]);
    }
    REQUIRE(points.size() > 20);

    CostPool pool;
    pool.costs = {0.5, 1.5, 3.0, 4.5};
    Rng rng(5);
    std::vector<double> zs(points.size());
    for (double& z : zs) z = sample_z(pool, rng);

    for (int threads : {1, 2, 3}) {
        BatchOptions opts;
        opts.threads = threads;
        CHECK(same_results(closest_batch_serial(model, points, {}, {}),
                           closest_batch(model, points, {}, {}, opts)));
        CHECK(same_results(plausible_batch_serial(model, points, data),
                           plausible_batch(model, points, data, opts)));
        CHECK(same_results(
            fair_batch_serial(model, points, zs, {}, CfMode::Closest, data, {}),
            fair_batch(model, points, zs, {}, CfMode::Closest, data, {}, opts)));
        CHECK(same_results(
            fair_batch_serial(model, points, zs, {}, CfMode::Plausible, data, {}),
            fair_batch(model, points, zs, {}, CfMode::Plausible, data, {}, opts)));
    }
}

TEST_CASE("thread count resolution") {
    BatchOptions opts;
    opts.threads = 3;
    CHECK(resolve_thread_count(opts) == 3);

    opts.threads = 0;
    setenv("FAIRCF_THREADS", "2", 1);
    CHECK(resolve_thread_count(opts) == 2);
    setenv("FAIRCF_THREADS", "zero", 1);
    CHECK_THROWS_AS(resolve_thread_count(opts), ConfigError);
    unsetenv("FAIRCF_THREADS");
    CHECK(resolve_thread_count(opts) >= 1);
}

TEST_CASE("exceptions surface from parallel loops deterministically") {
    const LogisticModel model({1.0}, 0.0);
    // second point has the wrong dimension
    const std::vector<FeatureVector> points{{-1.0}, {-1.0, 2.0}, {-2.0}};
    BatchOptions opts;
    opts.threads = 2;
    CHECK_THROWS_AS(closest_batch(model, points, {}, {}, opts), DimensionMismatch);
    CHECK_THROWS_AS(plausible_batch(
                        model, points,
                        testutil::make_dataset({{1.0}, {-1.0}}, {1, 0}, {0, 1}), opts),
                    DimensionMismatch);

    const std::vector<double> bad_zs{0.0, 1.0};  // wrong length
    CHECK_THROWS_AS(
        fair_batch(model, {{-1.0}}, bad_zs, {}, CfMode::Closest, {}, {}, opts),
        ConfigError);
}
