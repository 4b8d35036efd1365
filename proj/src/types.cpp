#include "faircf/types.hpp"

#include <algorithm>

#include "faircf/errors.hpp"

namespace faircf {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) throw EmptyPool("mean of empty value set");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double median_of(std::vector<double> values) {
    if (values.empty()) throw EmptyPool("median of empty value set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace faircf
