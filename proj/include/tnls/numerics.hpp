#pragma once

// Small quadrature helpers shared by the analysis checks and tests.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tnls::num {

// Composite Simpson rule on a uniform grid with spacing h.  Needs >= 3 samples;
// an even sample count is handled with a 3/8 rule on the last three panels.
template <typename T>
T simpson_uniform(std::span<const T> values, double h) {
    const size_t n = values.size();
    if (n < 3) throw std::invalid_argument("simpson_uniform: need at least 3 samples");
    size_t limit = n;           // index past the last 1/3-rule panel pair
    T tail{};
    if (n % 2 == 0) {           // odd panel count: finish with Simpson 3/8
        limit = n - 3;
        const size_t m = n - 4;
        tail = (values[m] + 3.0 * values[m + 1] + 3.0 * values[m + 2] + values[m + 3]) *
               (3.0 * h / 8.0);
    }
    T acc{};
    for (size_t i = 0; i + 2 < limit; i += 2)
        acc += values[i] + 4.0 * values[i + 1] + values[i + 2];
    return acc * (h / 3.0) + tail;
}

template <typename T>
T simpson_uniform(const std::vector<T>& values, double h) {
    return simpson_uniform(std::span<const T>(values), h);
}

// Simpson integral of the first `count` samples (count must keep >= 3 samples).
template <typename T>
T simpson_prefix(const std::vector<T>& values, double h, size_t count) {
    if (count > values.size()) throw std::invalid_argument("simpson_prefix: count too large");
    return simpson_uniform(std::span<const T>(values.data(), count), h);
}

}  // namespace tnls::num
