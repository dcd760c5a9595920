#include "dyntda/dms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dyntda/boids.hpp"
#include "dyntda/rng.hpp"

namespace dyntda {

namespace {

void check_tensor(const std::vector<std::string>& labels, const TimeGrid& grid,
                  const std::vector<double>& distances) {
    const std::size_t n = labels.size();
    const std::size_t t = static_cast<std::size_t>(grid.count);
    if (n == 0) throw std::invalid_argument("DynamicMetricSpace: empty point set");
    if (distances.size() != t * n * n)
        throw std::invalid_argument("DynamicMetricSpace: distance tensor has wrong size");
    for (std::size_t f = 0; f < t; ++f) {
        const double* m = distances.data() + f * n * n;
        for (std::size_t a = 0; a < n; ++a) {
            if (m[a * n + a] != 0.0)
                throw std::invalid_argument("DynamicMetricSpace: nonzero diagonal");
            for (std::size_t b = a + 1; b < n; ++b) {
                const double d = m[a * n + b];
                if (!(d >= 0.0)) // also rejects NaN
                    throw std::invalid_argument("DynamicMetricSpace: negative or NaN distance");
                if (d != m[b * n + a])
                    throw std::invalid_argument("DynamicMetricSpace: asymmetric matrix");
            }
        }
    }
}

} // namespace

DynamicMetricSpace DynamicMetricSpace::from_distances(std::vector<std::string> labels,
                                                      TimeGrid grid,
                                                      std::vector<double> distances) {
    check_tensor(labels, grid, distances);
    DynamicMetricSpace d;
    d.labels_ = std::move(labels);
    d.grid_ = grid;
    d.distances_ = std::move(distances);
    d.positional_ = false;
    return d;
}

DynamicMetricSpace DynamicMetricSpace::from_positions(std::vector<std::string> labels,
                                                      TimeGrid grid,
                                                      std::vector<double> positions,
                                                      double torus_size) {
    const std::size_t n = labels.size();
    if (n == 0) throw std::invalid_argument("DynamicMetricSpace: empty point set");
    if (torus_size <= 0.0) throw std::invalid_argument("DynamicMetricSpace: torus_size must be positive");
    if (positions.size() != static_cast<std::size_t>(grid.count) * n * 2)
        throw std::invalid_argument("DynamicMetricSpace: position tensor has wrong size");
    DynamicMetricSpace d;
    d.labels_ = std::move(labels);
    d.grid_ = grid;
    d.positions_ = std::move(positions);
    d.torus_size_ = torus_size;
    d.positional_ = true;
    return d;
}

double DynamicMetricSpace::distance(int t, int a, int b) const {
    const std::size_t n = labels_.size();
    if (positional_) {
        if (a == b) return 0.0;
        const double* p = positions_.data() + (static_cast<std::size_t>(t) * n + a) * 2;
        const double* q = positions_.data() + (static_cast<std::size_t>(t) * n + b) * 2;
        return torus_distance(p[0], p[1], q[0], q[1], torus_size_);
    }
    return distances_[(static_cast<std::size_t>(t) * n + a) * n + b];
}

std::vector<double> DynamicMetricSpace::distance_tensor() const {
    if (!positional_) return distances_;
    const int n = size();
    std::vector<double> out(static_cast<std::size_t>(grid_.count) * n * n, 0.0);
    for (int t = 0; t < grid_.count; ++t)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const double d = distance(t, a, b);
                out[(static_cast<std::size_t>(t) * n + a) * n + b] = d;
                out[(static_cast<std::size_t>(t) * n + b) * n + a] = d;
            }
    return out;
}

SquareMatrix aggregate_semimetric(const DynamicMetricSpace& dms, TimeIntervalIndex interval) {
    if (interval.j >= dms.time_grid().count)
        throw std::invalid_argument("aggregate_semimetric: interval index out of range");
    const int n = dms.size();
    SquareMatrix acc(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double m = dms.distance(interval.i, a, b);
            for (int t = interval.i + 1; t <= interval.j; ++t)
                m = std::min(m, dms.distance(t, a, b));
            acc.at(a, b) = acc.at(b, a) = m;
        }
    return acc;
}

AggregateScan::AggregateScan(const DynamicMetricSpace& dms, int start)
    : dms_(dms), start_(start), j_(start - 1), acc_(dms.size()) {
    if (start < 0 || start >= dms.time_grid().count)
        throw std::invalid_argument("AggregateScan: start index out of range");
}

bool AggregateScan::next() {
    if (j_ + 1 >= dms_.time_grid().count) return false;
    ++j_;
    const int n = dms_.size();
    if (j_ == start_) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                acc_.at(a, b) = acc_.at(b, a) = dms_.distance(j_, a, b);
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const double d = dms_.distance(j_, a, b);
                if (d < acc_.at(a, b)) acc_.at(a, b) = acc_.at(b, a) = d;
            }
    }
    return true;
}

DynamicMetricSpace restrict_points(const DynamicMetricSpace& dms, const std::vector<int>& subset) {
    const int n = dms.size();
    std::set<int> seen;
    for (int s : subset) {
        if (s < 0 || s >= n) throw std::invalid_argument("restrict_points: index out of range");
        if (!seen.insert(s).second) throw std::invalid_argument("restrict_points: duplicate index");
    }
    const int m = static_cast<int>(subset.size());
    if (m == 0) throw std::invalid_argument("restrict_points: empty subset");
    const int t_count = dms.time_grid().count;

    std::vector<std::string> labels;
    labels.reserve(m);
    for (int s : subset) labels.push_back(dms.labels()[s]);

    if (dms.positional()) {
        std::vector<double> pos(static_cast<std::size_t>(t_count) * m * 2);
        for (int t = 0; t < t_count; ++t)
            for (int a = 0; a < m; ++a) {
                const double* src =
                    dms.positions().data() + (static_cast<std::size_t>(t) * n + subset[a]) * 2;
                double* dst = pos.data() + (static_cast<std::size_t>(t) * m + a) * 2;
                dst[0] = src[0];
                dst[1] = src[1];
            }
        return DynamicMetricSpace::from_positions(std::move(labels), dms.time_grid(),
                                                  std::move(pos), dms.torus_size());
    }

    std::vector<double> out(static_cast<std::size_t>(t_count) * m * m, 0.0);
    for (int t = 0; t < t_count; ++t)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                out[(static_cast<std::size_t>(t) * m + a) * m + b] =
                    dms.distance(t, subset[a], subset[b]);
    return DynamicMetricSpace::from_distances(std::move(labels), dms.time_grid(), std::move(out));
}

DynamicMetricSpace subsample_time(const DynamicMetricSpace& dms, int stride, int max_count) {
    if (stride < 1) throw std::invalid_argument("subsample_time: stride must be positive");
    const int n = dms.size();
    const int t_count = dms.time_grid().count;
    int kept = (t_count - 1) / stride + 1;
    if (max_count > 0 && kept > max_count) kept = max_count;
    TimeGrid grid(dms.time_grid().t_start, dms.time_grid().step * stride, kept);

    if (dms.positional()) {
        std::vector<double> pos(static_cast<std::size_t>(kept) * n * 2);
        for (int f = 0; f < kept; ++f) {
            const double* src = dms.positions().data() + static_cast<std::size_t>(f) * stride * n * 2;
            std::copy(src, src + static_cast<std::size_t>(n) * 2,
                      pos.begin() + static_cast<std::size_t>(f) * n * 2);
        }
        return DynamicMetricSpace::from_positions(dms.labels(), grid, std::move(pos),
                                                  dms.torus_size());
    }

    std::vector<double> out(static_cast<std::size_t>(kept) * n * n);
    for (int f = 0; f < kept; ++f) {
        const double* src = dms.distances().data() + static_cast<std::size_t>(f) * stride * n * n;
        std::copy(src, src + static_cast<std::size_t>(n) * n,
                  out.begin() + static_cast<std::size_t>(f) * n * n);
    }
    return DynamicMetricSpace::from_distances(dms.labels(), grid, std::move(out));
}

DynamicMetricSpace perturb(const DynamicMetricSpace& dms, double magnitude, std::uint64_t seed) {
    if (magnitude < 0.0) throw std::invalid_argument("perturb: magnitude must be nonnegative");
    const int n = dms.size();
    std::vector<double> out = dms.distance_tensor();
    SplitMix64 rng(seed);
    for (int t = 0; t < dms.time_grid().count; ++t)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const std::size_t ab = (static_cast<std::size_t>(t) * n + a) * n + b;
                const std::size_t ba = (static_cast<std::size_t>(t) * n + b) * n + a;
                const double d = std::max(0.0, out[ab] + rng.uniform(-magnitude, magnitude));
                out[ab] = out[ba] = d;
            }
    return DynamicMetricSpace::from_distances(dms.labels(), dms.time_grid(), std::move(out));
}

} // namespace dyntda
