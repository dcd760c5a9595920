#pragma once

#include <stdexcept>

namespace dyntda {

// Uniform sampling of a time axis: times are t_start + i * step, i in [0, count).
struct TimeGrid {
    double t_start = 0.0;
    double step = 1.0;
    int count = 1;

    TimeGrid() = default;
    TimeGrid(double t_start_, double step_, int count_)
        : t_start(t_start_), step(step_), count(count_) {
        if (step <= 0.0) throw std::invalid_argument("TimeGrid: step must be positive");
        if (count < 1) throw std::invalid_argument("TimeGrid: count must be at least 1");
    }

    double time(int i) const { return t_start + i * step; }

    bool operator==(const TimeGrid&) const = default;
};

// Grid indices (i, j), i <= j, naming the compact time interval [t_i, t_j].
struct TimeIntervalIndex {
    int i = 0;
    int j = 0;

    TimeIntervalIndex() = default;
    TimeIntervalIndex(int i_, int j_) : i(i_), j(j_) {
        if (i < 0 || j < i) throw std::invalid_argument("TimeIntervalIndex: need 0 <= i <= j");
    }
};

} // namespace dyntda
