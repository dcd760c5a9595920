#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyntda/matrix.hpp"
#include "dyntda/time_grid.hpp"

namespace dyntda {

/// A finite point set with one semimetric per sampled time. Per-timestep
/// matrices are symmetric with zero diagonal and nonnegative entries; the
/// triangle inequality is not assumed anywhere downstream.
///
/// Two storage modes: an explicit T x N x N distance tensor, or per-frame
/// 2-d positions on a flat torus from which distances are evaluated lazily.
/// Values are immutable after construction and safe to share across threads.
class DynamicMetricSpace {
  public:
    static DynamicMetricSpace from_distances(std::vector<std::string> labels, TimeGrid grid,
                                             std::vector<double> distances);
    // positions: row-major T x N x 2, coordinates in [0, torus_size).
    static DynamicMetricSpace from_positions(std::vector<std::string> labels, TimeGrid grid,
                                             std::vector<double> positions, double torus_size);

    int size() const { return static_cast<int>(labels_.size()); }
    const TimeGrid& time_grid() const { return grid_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool positional() const { return positional_; }
    double torus_size() const { return torus_size_; }
    const std::vector<double>& positions() const { return positions_; }
    const std::vector<double>& distances() const { return distances_; }

    double distance(int t, int a, int b) const;

    // Materializes the full distance tensor regardless of storage mode.
    std::vector<double> distance_tensor() const;

  private:
    std::vector<std::string> labels_;
    TimeGrid grid_;
    std::vector<double> distances_; // T*N*N when not positional
    std::vector<double> positions_; // T*N*2 when positional
    double torus_size_ = 0.0;
    bool positional_ = false;
};

/// Entrywise min of the per-timestep matrices over grid times t_i..t_j.
SquareMatrix aggregate_semimetric(const DynamicMetricSpace& dms, TimeIntervalIndex interval);

/// Running-min scan: yields the aggregate over [t_i, t_j] for j = i, ..., T-1,
/// at O(N^2) per step. next() must be called before the first matrix() read.
class AggregateScan {
  public:
    AggregateScan(const DynamicMetricSpace& dms, int start);
    bool next();
    int j() const { return j_; }
    const SquareMatrix& matrix() const { return acc_; }

  private:
    const DynamicMetricSpace& dms_;
    int start_;
    int j_;
    SquareMatrix acc_;
};

/// Sub-DMS on the given point indices (distinct, in range), same time grid.
DynamicMetricSpace restrict_points(const DynamicMetricSpace& dms, const std::vector<int>& subset);

/// Every record_every-th frame starting from frame 0. Keeps at most max_count
/// frames when max_count > 0.
DynamicMetricSpace subsample_time(const DynamicMetricSpace& dms, int stride, int max_count = 0);

/// Adds a seeded-uniform amount in [-magnitude, magnitude] to every
/// off-diagonal entry, clamped at 0, preserving symmetry. Deterministic per seed.
DynamicMetricSpace perturb(const DynamicMetricSpace& dms, double magnitude, std::uint64_t seed);

} // namespace dyntda
