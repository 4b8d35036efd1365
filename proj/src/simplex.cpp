#include "faircf/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "faircf/errors.hpp"

namespace faircf {

namespace {

void validate(const SimplexConfig& cfg, std::size_t dim) {
    if (dim == 0) throw ConfigError("minimize needs a nonempty start point");
    if (cfg.reflection <= 0.0) throw ConfigError("reflection coefficient must be > 0");
    if (cfg.expansion <= 1.0) throw ConfigError("expansion coefficient must be > 1");
    if (cfg.contraction <= 0.0 || cfg.contraction >= 1.0)
        throw ConfigError("contraction coefficient must be in (0, 1)");
    if (cfg.shrink <= 0.0 || cfg.shrink >= 1.0)
        throw ConfigError("shrink coefficient must be in (0, 1)");
    if (cfg.initial_step == 0.0) throw ConfigError("initial step must be nonzero");
    if (cfg.f_tol <= 0.0) throw ConfigError("function tolerance must be > 0");
    if (cfg.max_iterations < 1) throw ConfigError("max iterations must be >= 1");
    if (!cfg.step_scale.empty() && cfg.step_scale.size() != dim)
        throw ConfigError("step scale size " + std::to_string(cfg.step_scale.size()) +
                          " does not match dimension " + std::to_string(dim));
}

}  // namespace

MinimizeResult minimize(const Objective& objective, const FeatureVector& start,
                        const SimplexConfig& config) {
    const std::size_t d = start.size();
    validate(config, d);

    auto eval = [&objective](const FeatureVector& x) {
        const double v = objective(x);
        if (!std::isfinite(v))
            throw NonFiniteObjective("objective evaluated to a non-finite value");
        return v;
    };

    // start plus one step along each coordinate
    std::vector<FeatureVector> vertices(d + 1, start);
    for (std::size_t j = 0; j < d; ++j) {
        const double scale = config.step_scale.empty() ? 1.0 : config.step_scale[j];
        vertices[j + 1][j] += config.initial_step * scale;
    }
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i <= d; ++i) values[i] = eval(vertices[i]);

    std::vector<std::size_t> order(d + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&values](std::size_t a, std::size_t b) {
                             return values[a] < values[b];
                         });
    };

    MinimizeResult result;
    int iteration = 0;
    for (; iteration < config.max_iterations; ++iteration) {
        sort_order();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[d > 0 ? d - 1 : 0];

        if (values[worst] - values[best] < config.f_tol) {
            result.converged = true;
            break;
        }

        FeatureVector centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += vertices[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto along = [&](double t) {
            FeatureVector x(d);
            for (std::size_t j = 0; j < d; ++j)
                x[j] = centroid[j] + t * (centroid[j] - vertices[worst][j]);
            return x;
        };

        const FeatureVector reflected = along(config.reflection);
        const double f_reflected = eval(reflected);

        if (f_reflected < values[best]) {
            const FeatureVector expanded = along(config.reflection * config.expansion);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                vertices[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                vertices[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            vertices[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        bool shrink = false;
        if (f_reflected < values[worst]) {  // outside contraction
            const FeatureVector contracted = along(config.reflection * config.contraction);
            const double f_contracted = eval(contracted);
            if (f_contracted <= f_reflected) {
                vertices[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                shrink = true;
            }
        } else {  // inside contraction
            const FeatureVector contracted = along(-config.contraction);
            const double f_contracted = eval(contracted);
            if (f_contracted < values[worst]) {
                vertices[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            const FeatureVector anchor = vertices[best];
            for (std::size_t i = 0; i <= d; ++i) {
                if (i == best) continue;
                for (std::size_t j = 0; j < d; ++j)
                    vertices[i][j] = anchor[j] + config.shrink * (vertices[i][j] - anchor[j]);
                values[i] = eval(vertices[i]);
            }
        }
    }

    sort_order();
    result.argmin = vertices[order.front()];
    result.value = values[order.front()];
    result.iterations = iteration;
    return result;
}

MinimizeResult minimize_with_restarts(
    const Objective& objective, const FeatureVector& start,
    const SimplexConfig& config,
    const std::function<bool(const FeatureVector&)>& accept, int max_restarts) {
    MinimizeResult run = minimize(objective, start, config);
    SimplexConfig retry = config;
    for (int r = 0; r < max_restarts && !accept(run.argmin); ++r) {
        retry.initial_step *= 2.0;
        MinimizeResult next = minimize(objective, run.argmin, retry);
        next.iterations += run.iterations;
        run = next;
    }
    // A plateau escape can leave movement on coordinates the objective never
    // rewarded; fresh base-step runs from the accepted point walk it back.
    for (int p = 0; p < 3 && accept(run.argmin); ++p) {
        MinimizeResult polish = minimize(objective, run.argmin, config);
        polish.iterations += run.iterations;
        if (!accept(polish.argmin) || run.value - polish.value <= config.f_tol) break;
        run = polish;
    }
    return run;
}

}  // namespace faircf
