#ifndef FAIRCF_SIMPLEX_HPP
#define FAIRCF_SIMPLEX_HPP

#include <functional>
#include <vector>

#include "faircf/types.hpp"

namespace faircf {

using Objective = std::function<double(const FeatureVector&)>;

struct SimplexConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 0.5;
    // Optional per-dimension scale applied to initial_step; empty means 1
    // everywhere. Lets callers working in unstandardized units keep the
    // initial simplex commensurate with each feature's spread.
    std::vector<double> step_scale;
    double f_tol = 1e-8;
    int max_iterations = 2000;
};

struct MinimizeResult {
    FeatureVector argmin;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead downhill simplex. Deterministic; stops when the max-min
/// objective spread over the simplex drops below f_tol or the iteration
/// cap is hit (converged=false in that case). Throws NonFiniteObjective
/// if any evaluation returns NaN or infinity.
MinimizeResult minimize(const Objective& objective, const FeatureVector& start,
                        const SimplexConfig& config = {});

/// Reruns the solver from the best point so far with a doubled initial step
/// while `accept` rejects the argmin, up to max_restarts times. Hinge-flat
/// objectives make the start a spurious local optimum whenever the penalty
/// gradient under the simplex is smaller than the distance gradient; larger
/// initial steps let a vertex reach past the plateau. Iteration counts
/// accumulate over the reruns.
MinimizeResult minimize_with_restarts(const Objective& objective,
                                      const FeatureVector& start,
                                      const SimplexConfig& config,
                                      const std::function<bool(const FeatureVector&)>& accept,
                                      int max_restarts = 4);

}  // namespace faircf

#endif  // FAIRCF_SIMPLEX_HPP
