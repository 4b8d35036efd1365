#ifndef FAIRCF_TESTS_FIXTURES_HPP
#define FAIRCF_TESTS_FIXTURES_HPP

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "faircf/dataset.hpp"
#include "faircf/model.hpp"

namespace testutil {

using faircf::Dataset;
using faircf::FeatureVector;
using faircf::LogisticModel;
using faircf::PredictionModel;

// predict(x)=1 iff x >= 0, with a score smooth enough for simplex descent.
inline LogisticModel one_d_threshold_model() { return LogisticModel({3.0}, 0.0); }

inline bool margin_valid(const PredictionModel& model, const FeatureVector& x,
                         int y_cf, double margin) {
    const double s = model.score(x);
    return y_cf == 1 ? s >= 0.5 + margin : s <= 0.5 - margin;
}

// Brute-force closest-counterfactual oracle in 1-D: smallest |x - x0| over a
// grid of points the model accepts as y_cf (margin > 0 demands the score
// margin, margin == 0 falls back to plain prediction).
inline double line_search_min_cost(const PredictionModel& model, double x0, int y_cf,
                                   double lo, double hi, double step, double margin) {
    double best = std::numeric_limits<double>::infinity();
    for (double x = lo; x <= hi + 1e-12; x += step) {
        const FeatureVector v{x};
        const bool ok = margin > 0.0 ? margin_valid(model, v, y_cf, margin)
                                     : model.predict(v) == y_cf;
        if (ok) best = std::min(best, std::abs(x - x0));
    }
    return best;
}

// Brute-force argmin of an arbitrary 1-D objective over a grid.
inline std::pair<double, double> line_search_argmin(
    const std::function<double(double)>& f, double lo, double hi, double step) {
    double best_x = lo, best_f = std::numeric_limits<double>::infinity();
    for (double x = lo; x <= hi + 1e-12; x += step) {
        const double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    }
    return {best_x, best_f};
}

// Dense-grid closest-counterfactual oracle on a 2-D lattice around x0.
inline double grid_search_min_cost_2d(const PredictionModel& model,
                                      const FeatureVector& x0, int y_cf,
                                      double half_width, double step, double margin) {
    double best = std::numeric_limits<double>::infinity();
    const long n = std::lround(half_width / step);
    FeatureVector v(2);
    for (long i = -n; i <= n; ++i) {
        v[0] = x0[0] + static_cast<double>(i) * step;
        const double dx = std::abs(v[0] - x0[0]);
        if (dx >= best) continue;
        for (long j = -n; j <= n; ++j) {
            v[1] = x0[1] + static_cast<double>(j) * step;
            const double cost = dx + std::abs(v[1] - x0[1]);
            if (cost >= best) continue;
            if (margin_valid(model, v, y_cf, margin)) best = cost;
        }
    }
    return best;
}

inline Dataset make_dataset(std::vector<FeatureVector> xs, std::vector<int> ys,
                            std::vector<int> gs) {
    Dataset data;
    data.features = std::move(xs);
    data.labels = std::move(ys);
    data.groups = std::move(gs);
    for (std::size_t j = 0; j < data.dim(); ++j)
        data.feature_names.push_back("f" + std::to_string(j + 1));
    for (std::size_t i = 0; i < data.size(); ++i) data.row_ids.push_back(i);
    return data;
}

inline Dataset two_gaussian_clusters(std::uint64_t seed, std::size_t n_per_class,
                                     const FeatureVector& center0,
                                     const FeatureVector& center1) {
    faircf::Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<FeatureVector> xs;
    std::vector<int> ys, gs;
    for (int cls = 0; cls <= 1; ++cls) {
        const FeatureVector& center = cls == 0 ? center0 : center1;
        for (std::size_t i = 0; i < n_per_class; ++i) {
            FeatureVector x(center.size());
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = center[j] + noise(rng);
            xs.push_back(std::move(x));
            ys.push_back(cls);
            gs.push_back(static_cast<int>(i % 2));
        }
    }
    return make_dataset(std::move(xs), std::move(ys), std::move(gs));
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CliResult run_cli(const std::string& command) {
    static int counter = 0;
    const std::string capture =
        "/tmp/faircf_cli_out_" + std::to_string(getpid()) + "_" +
        std::to_string(counter++) + ".txt";
    const int rc = std::system((command + " > " + capture + " 2>&1").c_str());
    CliResult result;
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.output = read_file(capture);
    std::remove(capture.c_str());
    return result;
}

inline std::string scratch_dir() {
    char templ[] = "/tmp/faircf_test_XXXXXX";
    const char* dir = mkdtemp(templ);
    return dir ? dir : "/tmp";
}

}  // namespace testutil

#endif  // FAIRCF_TESTS_FIXTURES_HPP
