#ifndef FAIRCF_TYPES_HPP
#define FAIRCF_TYPES_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace faircf {

// One sample in feature space. Fixed dimensionality within a dataset,
// all entries finite.
using FeatureVector = std::vector<double>;

using Rng = std::mt19937_64;

// splitmix64 step; gives independent, reproducible seeds for the
// sub-generators used by folds and z-draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double mean_of(const std::vector<double>& values);

// Median with the even-size convention: average of the two middle values.
double median_of(std::vector<double> values);

}  // namespace faircf

#endif  // FAIRCF_TYPES_HPP
