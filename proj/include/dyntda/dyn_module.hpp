#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dyntda/dms.hpp"
#include "dyntda/grid_module.hpp"
#include "dyntda/time_grid.hpp"

namespace dyntda {

/// Discretization of the (time interval, scale) index poset: T time samples
/// shared with a DMS, and S scale samples 0, h, ..., (S-1)h with the same
/// spacing h as the time axis, so that a one-step diagonal shift lands on
/// lattice points in all three directions. Scale values are compared after
/// multiplication by delta_weight (a unit conversion between distance and
/// time axes).
struct DynGrid {
    TimeGrid time_grid;
    int delta_count = 1;       // S
    double delta_weight = 1.0; // w

    DynGrid() = default;
    DynGrid(TimeGrid tg, int s, double w = 1.0) : time_grid(tg), delta_count(s), delta_weight(w) {
        if (s < 1) throw std::invalid_argument("DynGrid: delta_count must be positive");
        if (w <= 0.0) throw std::invalid_argument("DynGrid: delta_weight must be positive");
    }

    double spacing() const { return time_grid.step; }

    bool operator==(const DynGrid&) const = default;
};

/// A grid point of the Dyn poset: time interval [t_i, t_j] and scale index m.
/// (i, j, m) <= (i', j', m') iff i' <= i, j <= j', m <= m'.
struct DynPoint {
    int i = 0;
    int j = 0;
    int m = 0;

    bool operator==(const DynPoint&) const = default;
};

inline bool dyn_leq(const DynPoint& p, const DynPoint& q) {
    return q.i <= p.i && p.j <= q.j && p.m <= q.m;
}

/// Thin module over a DynGrid. For each time-interval index (i <= j) the
/// support along the scale axis is one interval [birth, death) in weighted
/// scale units: grid point ((i,j), m) is in the support iff
/// w * birth <= m * h < w * death.
class ThinDynModule {
  public:
    explicit ThinDynModule(DynGrid grid);

    const DynGrid& grid() const { return grid_; }
    int time_count() const { return grid_.time_grid.count; }

    void set_entry(int i, int j, double birth, double death);
    void clear_entry(int i, int j);
    std::optional<std::pair<double, double>> entry(int i, int j) const;

    /// Scale-index range of the support at (i, j), clipped to [0, S).
    std::optional<Interval1d> support_interval(int i, int j) const;

    bool in_support(const DynPoint& p) const;
    std::vector<DynPoint> support_points() const;
    bool empty() const;

    nlohmann::json to_json() const;
    static ThinDynModule from_json(const nlohmann::json& j);

  private:
    struct Entry {
        double birth = 0.0;
        double death = 0.0;
        bool present = false;
    };
    DynGrid grid_;
    std::vector<Entry> entries_; // T x T, upper triangle used
    std::size_t index(int i, int j) const;
};

/// Degree-k module of a (2k+2)-point DMS: for every time-interval index the
/// min-aggregated semimetric is fed to the small-complex diagram computation
/// and the resulting scale interval is stored.
ThinDynModule build_dyn_module(const DynamicMetricSpace& dms, int k, const DynGrid& grid);

/// Order-connected components of the support.
struct IntervalDecomposition {
    std::vector<std::vector<DynPoint>> components;
};

/// Components by union-find over support points joined along unit cover steps
/// in the three axis directions (cover-step connectivity equals
/// order-connectivity inside a convex support).
IntervalDecomposition decompose(const ThinDynModule& m);

/// True iff every pair of points from distinct components is incomparable.
bool verify_acd(const IntervalDecomposition& d);

/// Coordinate change (i, j, m) -> (T-1-i, j, m) onto the box [T] x [T] x [S]:
/// the Dyn order becomes the product order and a unit diagonal shift becomes
/// +(1, 1, 1). Columns are indexed by the two time coordinates.
GridModule dyn_to_poset_coords(const ThinDynModule& m);

} // namespace dyntda
