#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dyntda/dms.hpp"
#include "dyntda/matrix.hpp"
#include "dyntda/rng.hpp"

namespace testsupport {

inline dyntda::SquareMatrix random_semimetric(int n, std::uint64_t seed, double max_value = 1.0) {
    dyntda::SplitMix64 rng(seed);
    dyntda::SquareMatrix m(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) m.at(a, b) = m.at(b, a) = rng.uniform(0.0, max_value);
    return m;
}

// n-point DMS whose pairwise distances are clipped sinusoids: positive
// baseline, per-pair amplitude/frequency/phase. Smooth-ish and nonnegative.
inline dyntda::DynamicMetricSpace random_dms(int n, int frames, double step, std::uint64_t seed) {
    dyntda::SplitMix64 rng(seed);
    std::vector<double> base(n * n), amp(n * n), freq(n * n), phase(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            base[a * n + b] = rng.uniform(0.5, 2.0);
            amp[a * n + b] = rng.uniform(0.0, 1.2);
            freq[a * n + b] = rng.uniform(0.5, 4.0);
            phase[a * n + b] = rng.uniform(0.0, 2.0 * M_PI);
        }
    dyntda::TimeGrid grid(0.0, step, frames);
    std::vector<double> tensor(static_cast<std::size_t>(frames) * n * n, 0.0);
    for (int f = 0; f < frames; ++f)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const double d = std::fabs(base[a * n + b] +
                                           amp[a * n + b] *
                                               std::sin(freq[a * n + b] * grid.time(f) +
                                                        phase[a * n + b]));
                tensor[(static_cast<std::size_t>(f) * n + a) * n + b] = d;
                tensor[(static_cast<std::size_t>(f) * n + b) * n + a] = d;
            }
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) labels.push_back("p" + std::to_string(a));
    return dyntda::DynamicMetricSpace::from_distances(labels, grid, tensor);
}

// Three collinear points: the outer two pinned at -2 and +2, the middle one
// oscillating. With absolute_value = false the middle point follows sin(t);
// with true it follows |sin(t)|. The per-time distance multisets agree, the
// behaviors over time intervals do not.
inline dyntda::DynamicMetricSpace oscillator_triple(const dyntda::TimeGrid& grid,
                                                    bool absolute_value, double r = 1.0) {
    const int n = 3;
    std::vector<double> tensor(static_cast<std::size_t>(grid.count) * n * n, 0.0);
    for (int f = 0; f < grid.count; ++f) {
        double mid = r * std::sin(grid.time(f));
        if (absolute_value) mid = std::fabs(mid);
        const double d01 = std::fabs(-2.0 - mid);
        const double d12 = std::fabs(2.0 - mid);
        const double d02 = 4.0;
        auto put = [&](int a, int b, double v) {
            tensor[(static_cast<std::size_t>(f) * n + a) * n + b] = v;
            tensor[(static_cast<std::size_t>(f) * n + b) * n + a] = v;
        };
        put(0, 1, d01);
        put(1, 2, d12);
        put(0, 2, d02);
    }
    return dyntda::DynamicMetricSpace::from_distances({"left", "mid", "right"}, grid, tensor);
}

// 4-point unit square: sides 1, diagonals sqrt(2).
inline dyntda::SquareMatrix unit_square() {
    dyntda::SquareMatrix m(4);
    const double s2 = std::sqrt(2.0);
    auto put = [&](int a, int b, double v) { m.at(a, b) = m.at(b, a) = v; };
    put(0, 1, 1.0);
    put(1, 2, 1.0);
    put(2, 3, 1.0);
    put(0, 3, 1.0);
    put(0, 2, s2);
    put(1, 3, s2);
    return m;
}

// 4-point rhombus with unit sides and diagonals 1 and sqrt(3).
inline dyntda::SquareMatrix rhombus() {
    dyntda::SquareMatrix m(4);
    const double s3 = std::sqrt(3.0);
    auto put = [&](int a, int b, double v) { m.at(a, b) = m.at(b, a) = v; };
    put(0, 1, 1.0);
    put(1, 2, 1.0);
    put(2, 3, 1.0);
    put(0, 3, 1.0);
    put(0, 2, s3);  // major diagonal
    put(1, 3, 1.0); // minor diagonal
    return m;
}

// Constant-in-time DMS from a fixed matrix.
inline dyntda::DynamicMetricSpace static_dms(const dyntda::SquareMatrix& m,
                                             const dyntda::TimeGrid& grid) {
    const int n = m.n;
    std::vector<double> tensor(static_cast<std::size_t>(grid.count) * n * n);
    for (int f = 0; f < grid.count; ++f)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                tensor[(static_cast<std::size_t>(f) * n + a) * n + b] = m.at(a, b);
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) labels.push_back("p" + std::to_string(a));
    return dyntda::DynamicMetricSpace::from_distances(labels, grid, tensor);
}

} // namespace testsupport
